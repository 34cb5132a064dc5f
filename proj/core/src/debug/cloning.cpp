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

#include "qdb/debug/cloning.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "qdb/debug/analysis.hpp"
#include "qdb/errors.hpp"
#include "qdb/sim/engine.hpp"
#include "qdb/state/gates.hpp"

namespace qdb::debug {

namespace {

constexpr double kBlankTolerance = 1e-9;

void check_disjoint(std::size_t n_qubits, const std::vector<std::vector<std::size_t>>& groups) {
    std::set<std::size_t> seen;
    for (const auto& g : groups) {
        for (std::size_t q : g) {
            if (q >= n_qubits) throw Error(ErrorCode::IndexOutOfRange, "qubit " + std::to_string(q) + " out of range");
            if (!seen.insert(q).second) {
                throw Error(ErrorCode::RegisterOverlap, "qubit " + std::to_string(q) + " used twice");
            }
        }
    }
}

double probability_all_zero(const QuantumState& state, const std::vector<std::size_t>& qubits) {
    std::size_t mask = 0;
    for (std::size_t q : qubits) mask |= state.mask(q);
    double p = 0.0;
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        if ((i & mask) == 0) p += std::norm(state[i]);
    }
    return p;
}

qasm::Instruction gate(qasm::OpKind kind, std::vector<std::size_t> qubits, std::string label) {
    qasm::Instruction ins;
    ins.kind = kind;
    if (kind == qasm::OpKind::U) ins.params = {std::numbers::pi / 2, 0.0, std::numbers::pi};
    ins.op_qubits = qubits;
    ins.qubits = std::move(qubits);
    ins.label = std::move(label);
    return ins;
}

}  // namespace

qasm::CircuitIR exact_clone_circuit(std::size_t n_qubits, const std::vector<std::size_t>& source,
                                    const std::vector<std::size_t>& blank) {
    if (source.size() != blank.size()) {
        throw Error(ErrorCode::RegisterOverlap, "source and blank registers differ in size");
    }
    if (source.empty()) throw Error(ErrorCode::RegisterOverlap, "empty source register");
    check_disjoint(n_qubits, {source, blank});

    qasm::CircuitIR ir;
    ir.n_qubits = n_qubits;
    ir.qregs.push_back({"q", 0, n_qubits});
    auto push = [&](qasm::Instruction ins) {
        ins.op_id = ir.instructions.size();
        ir.instructions.push_back(std::move(ins));
    };
    for (std::size_t q : source) push(gate(qasm::OpKind::U, {q}, "h"));
    for (std::size_t k = 0; k < source.size(); ++k) push(gate(qasm::OpKind::CX, {source[k], blank[k]}, "cx"));
    for (std::size_t q : source) push(gate(qasm::OpKind::U, {q}, "h"));
    for (std::size_t q : blank) push(gate(qasm::OpKind::U, {q}, "h"));
    return ir;
}

void exact_clone_orthogonal(QuantumState& state, const std::vector<std::size_t>& source,
                            const std::vector<std::size_t>& blank, bool check_blank) {
    const qasm::CircuitIR ir = exact_clone_circuit(state.n_qubits(), source, blank);
    if (check_blank) {
        const double p = probability_all_zero(state, blank);
        if (p < 1.0 - kBlankTolerance) {
            throw Error(ErrorCode::BlankNotZero, "blank register is |0...0> with probability " + std::to_string(p));
        }
    }
    sim::apply_unitary_range(ir, 0, ir.instructions.size(), state);
}

const Eigen::MatrixXcd& universal_cloner_unitary() {
    static const Eigen::MatrixXcd u = [] {
        const double a = std::sqrt(2.0 / 3.0);
        const double b = std::sqrt(1.0 / 6.0);
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(8, 8);
        // column |000>
        m(0b000, 0) = a;
        m(0b011, 0) = b;
        m(0b101, 0) = b;
        // column |100>
        m(0b111, 4) = a;
        m(0b010, 4) = b;
        m(0b100, 4) = b;
        // complete the other six columns
        std::size_t next = 0;
        for (Eigen::Index col = 0; col < 8; ++col) {
            if (col == 0 || col == 4) continue;
            while (true) {
                Eigen::VectorXcd v = Eigen::VectorXcd::Unit(8, static_cast<Eigen::Index>(next++));
                for (Eigen::Index k = 0; k < 8; ++k) {
                    if (m.col(k).squaredNorm() == 0.0) continue;
                    v -= m.col(k).dot(v) * m.col(k);
                }
                const double norm = v.norm();
                if (norm > 1e-6) {
                    m.col(col) = v / norm;
                    break;
                }
            }
        }
        return m;
    }();
    return u;
}

CloneReport universal_clone(QuantumState& state, std::size_t source, std::size_t copy, std::size_t ancilla,
                            bool inspect) {
    check_disjoint(state.n_qubits(), {{source}, {copy}, {ancilla}});
    CloneReport report;
    if (inspect) {
        DensityMatrix in = partial_trace(state, {source});
        const double p = purity(in);
        if (p < 1.0 - 1e-6) {
            throw Error(ErrorCode::MixedSource, "source qubit has purity " + std::to_string(p));
        }
        const double blank = probability_all_zero(state, {copy, ancilla});
        if (blank < 1.0 - kBlankTolerance) {
            throw Error(ErrorCode::BlankNotZero, "blank qubits are |00> with probability " + std::to_string(blank));
        }
        report.input = in;
    }

    const std::vector<std::size_t> wires{source, copy, ancilla};
    apply_matrix(state, universal_cloner_unitary(), wires);

    if (inspect) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(report.input->matrix());
        const QuantumState psi = QuantumState::from_amplitudes({solver.eigenvectors()(0, 1), solver.eigenvectors()(1, 1)}, true);
        report.source_out = partial_trace(state, {source});
        report.copy_out = partial_trace(state, {copy});
        report.fidelity_source = fidelity(psi, *report.source_out);
        report.fidelity_copy = fidelity(psi, *report.copy_out);
    }
    return report;
}

nlohmann::json to_json(const CloneReport& report) {
    nlohmann::json j = nlohmann::json::object();
    j["fidelity_source"] = report.fidelity_source ? nlohmann::json(*report.fidelity_source) : nlohmann::json(nullptr);
    j["fidelity_copy"] = report.fidelity_copy ? nlohmann::json(*report.fidelity_copy) : nlohmann::json(nullptr);
    if (report.input) j["input"] = density_to_json(*report.input);
    if (report.source_out) j["source_out"] = density_to_json(*report.source_out);
    if (report.copy_out) j["copy_out"] = density_to_json(*report.copy_out);
    return j;
}

}  // namespace qdb::debug
