// Copyright 2026 The qdb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "qdb/qasm/ir.hpp"

namespace qdb::sim {

inline constexpr std::size_t kMaxUnitaryQubits = 10;

/// The 2^n x 2^n matrix of a measurement-free program, column k being the
/// image of basis state k. Throws NonUnitaryProgram or CapacityExceeded.
Eigen::MatrixXcd circuit_unitary(const qasm::CircuitIR& ir, std::size_t max_qubits = kMaxUnitaryQubits);

}  // namespace qdb::sim
