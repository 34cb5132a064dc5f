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
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "qdb/qasm/ir.hpp"
#include "qdb/state/density.hpp"
#include "qdb/state/state.hpp"

namespace qdb::debug {

/// Gate sequence that copies any member of {H^n |j>} from `source` onto
/// `blank`: H on the source, CX fan-out, H on the source, H on the blank.
/// Throws RegisterOverlap when the registers intersect or differ in size.
qasm::CircuitIR exact_clone_circuit(std::size_t n_qubits, const std::vector<std::size_t>& source,
                                    const std::vector<std::size_t>& blank);

/// Applies exact_clone_circuit to `state`. With `check_blank` the blank
/// register must be |0...0> (BlankNotZero).
void exact_clone_orthogonal(QuantumState& state, const std::vector<std::size_t>& source,
                            const std::vector<std::size_t>& blank, bool check_blank = true);

/// 8x8 unitary on (source, copy, ancilla), q0-leftmost, that extends
///   |0>|00> -> sqrt(2/3)|000> + sqrt(1/6)(|011> + |101>)
///   |1>|00> -> sqrt(2/3)|111> + sqrt(1/6)(|010> + |100>)
/// by Gram-Schmidt over the remaining basis vectors.
const Eigen::MatrixXcd& universal_cloner_unitary();

struct CloneReport {
    /// Fidelity of each output qubit's reduced state with the input; absent
    /// when the input was not inspected.
    std::optional<double> fidelity_source;
    std::optional<double> fidelity_copy;
    std::optional<DensityMatrix> input;
    std::optional<DensityMatrix> source_out;
    std::optional<DensityMatrix> copy_out;
};

nlohmann::json to_json(const CloneReport& report);

/// Runs the universal 1 -> 2 cloner on (source, copy, ancilla). With
/// `inspect` the source must be pure (MixedSource) and the blanks |00>
/// (BlankNotZero), and the report carries fidelities.
CloneReport universal_clone(QuantumState& state, std::size_t source, std::size_t copy, std::size_t ancilla,
                            bool inspect = true);

}  // namespace qdb::debug
