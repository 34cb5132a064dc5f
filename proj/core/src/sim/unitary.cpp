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

#include "qdb/sim/unitary.hpp"

#include "qdb/errors.hpp"
#include "qdb/sim/engine.hpp"

namespace qdb::sim {

Eigen::MatrixXcd circuit_unitary(const qasm::CircuitIR& ir, std::size_t max_qubits) {
    if (ir.n_qubits > max_qubits) {
        throw Error(ErrorCode::CapacityExceeded, "unitary of " + std::to_string(ir.n_qubits) +
                                                     " qubits exceeds the limit of " + std::to_string(max_qubits));
    }
    if (!ir.is_unitary()) throw Error(ErrorCode::NonUnitaryProgram, "program measures, resets or branches");
    const std::size_t dim = std::size_t{1} << ir.n_qubits;
    Eigen::MatrixXcd out(dim, dim);
    for (std::size_t k = 0; k < dim; ++k) {
        QuantumState column = QuantumState::basis(ir.n_qubits, k);
        apply_unitary_range(ir, 0, ir.instructions.size(), column);
        for (std::size_t r = 0; r < dim; ++r) out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = column[r];
    }
    return out;
}

}  // namespace qdb::sim
