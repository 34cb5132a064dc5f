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

#include "qdb/debug/analysis.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "qdb/errors.hpp"
#include "qdb/sim/engine.hpp"
#include "qdb/state/gates.hpp"

namespace qdb::debug {

namespace {

double pure_purity(const QuantumState& state, const std::vector<std::size_t>& keep) {
    return purity(partial_trace(state, keep));
}

std::string operator_name(const std::string& label) {
    if (label == "cx" || label == "CX") return "CNOT";
    if (label == "id") return "I";
    std::string out = label;
    for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

struct Op {
    std::string label;
    std::vector<std::size_t> qubits;
};

std::vector<Op> gate_applications(const qasm::CircuitIR& ir) {
    std::vector<Op> ops;
    std::optional<std::size_t> last_id;
    for (const auto& ins : ir.instructions) {
        if (ins.kind == qasm::OpKind::Barrier) continue;
        if (last_id && *last_id == ins.op_id) continue;
        last_id = ins.op_id;
        ops.push_back({ins.label, ins.op_qubits});
    }
    return ops;
}

std::string render_layer(const std::vector<const Op*>& layer, std::size_t n_qubits) {
    std::vector<const Op*> owner(n_qubits, nullptr);
    for (const Op* op : layer) {
        for (std::size_t q : op->qubits) owner[q] = op;
    }
    std::vector<std::string> factors;
    std::size_t q = 0;
    while (q < n_qubits) {
        if (!owner[q]) {
            std::size_t run = 0;
            while (q < n_qubits && !owner[q]) {
                ++run;
                ++q;
            }
            factors.push_back("I" + std::to_string(std::size_t{1} << run));
            continue;
        }
        const Op* op = owner[q];
        const auto first = *std::min_element(op->qubits.begin(), op->qubits.end());
        if (q != first) {  // already rendered at its lowest qubit
            ++q;
            continue;
        }
        bool contiguous = true;
        for (std::size_t k = 0; k < op->qubits.size(); ++k) contiguous = contiguous && op->qubits[k] == q + k;
        std::string name = operator_name(op->label);
        if (!contiguous) {
            name += "[";
            for (std::size_t k = 0; k < op->qubits.size(); ++k) {
                name += (k ? "," : "") + std::to_string(op->qubits[k]);
            }
            name += "]";
        }
        factors.push_back(name);
        q += contiguous ? op->qubits.size() : 1;
    }
    std::string out;
    for (std::size_t i = 0; i < factors.size(); ++i) out += (i ? " ⊗ " : "") + factors[i];
    return out;
}

}  // namespace

SuperpositionReport superposition_of(const QuantumState& state) {
    SuperpositionReport report;
    const auto probs = probabilities(state);
    double max_p = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        max_p = std::max(max_p, probs[i]);
        if (probs[i] > kSupportCutoff) report.support.push_back({state.label(i), probs[i], state[i]});
    }
    std::stable_sort(report.support.begin(), report.support.end(),
                     [](const SupportEntry& a, const SupportEntry& b) { return a.probability > b.probability; });
    report.superposed = max_p < kSuperpositionThreshold;
    return report;
}

SuperpositionReport check_superposition_known_input(const qasm::CircuitIR& ir, std::size_t end,
                                                    const std::optional<std::string>& initial) {
    if (!initial) {
        throw Error(ErrorCode::UnknownInput, "superposition can only be decided for a known basis input");
    }
    const bool is_label = initial->size() == ir.n_qubits &&
                          std::all_of(initial->begin(), initial->end(), [](char c) { return c == '0' || c == '1'; });
    if (!is_label) {
        throw Error(ErrorCode::UnknownInput, "initial state '" + *initial + "' is not a basis label over " +
                                                 std::to_string(ir.n_qubits) + " qubits");
    }
    QuantumState state = ir.n_qubits ? QuantumState::basis(*initial) : QuantumState(0);
    sim::apply_unitary_range(ir, 0, end, state);
    return superposition_of(state);
}

SeparabilityReport separability_report(const QuantumState& state, bool bipartitions) {
    SeparabilityReport report;
    const std::size_t n = state.n_qubits();
    for (std::size_t q = 0; q < n; ++q) {
        const double p = pure_purity(state, {q});
        report.qubits.push_back({q, p, p < kEntangledPurity});
    }
    if (bipartitions && n >= 2 && n <= kMaxBipartitionQubits) {
        const std::size_t others = n - 1;
        for (std::size_t mask = 0; mask + 1 < (std::size_t{1} << others); ++mask) {
            std::vector<std::size_t> part{0}, rest;
            for (std::size_t k = 0; k < others; ++k) ((mask >> k) & 1 ? part : rest).push_back(k + 1);
            // both sides of a pure-state cut have the same purity
            const double p = pure_purity(state, part.size() <= rest.size() ? part : rest);
            report.bipartitions.push_back({part, p, p < kEntangledPurity});
        }
    }
    return report;
}

SeparabilityReport separability_report(const DensityMatrix& rho, bool bipartitions) {
    const double global = purity(rho);
    if (global < kEntangledPurity) {
        throw Error(ErrorCode::MixedGlobalState,
                    "global state has purity " + std::to_string(global) + "; the purity test needs a pure state");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.matrix());
    const Eigen::Index top = rho.matrix().rows() - 1;
    std::vector<Complex> amps(static_cast<std::size_t>(rho.matrix().rows()));
    for (Eigen::Index i = 0; i <= top; ++i) amps[static_cast<std::size_t>(i)] = solver.eigenvectors()(i, top);
    return separability_report(QuantumState::from_amplitudes(std::move(amps), true), bipartitions);
}

std::vector<std::string> operator_layers(const qasm::CircuitIR& ir) {
    const std::vector<Op> ops = gate_applications(ir);
    std::vector<std::size_t> depth(ir.n_qubits, 0);
    std::vector<std::vector<const Op*>> layers;
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        std::size_t layer = 0;
        for (std::size_t q : it->qubits) layer = std::max(layer, depth[q]);
        for (std::size_t q : it->qubits) depth[q] = layer + 1;
        if (layers.size() <= layer) layers.resize(layer + 1);
        layers[layer].push_back(&*it);
    }
    std::vector<std::string> out;
    for (const auto& layer : layers) out.push_back(render_layer(layer, ir.n_qubits));
    return out;
}

std::optional<PreparationMatch> describe_as_known_preparation(const QuantumState& target,
                                                              const std::vector<Preparation>& candidates,
                                                              double tol) {
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const Preparation& c = candidates[i];
        if (!c.ir || c.ir->n_qubits != target.n_qubits() || c.initial.size() != target.n_qubits()) continue;
        QuantumState state = QuantumState::basis(c.initial);
        sim::apply_unitary_range(*c.ir, 0, c.ir->instructions.size(), state);
        if (!equal_up_to_global_phase(target, state, tol)) continue;

        PreparationMatch m;
        m.index = i;
        m.name = c.name;
        m.initial = c.initial;
        m.operators = operator_layers(*c.ir);
        for (const auto& layer : m.operators) m.description += "(" + layer + ")";
        m.description += "|" + c.initial + "⟩";
        return m;
    }
    return std::nullopt;
}

nlohmann::json density_to_json(const DensityMatrix& rho) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < rho.matrix().rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < rho.matrix().cols(); ++c) {
            row.push_back({rho.matrix()(r, c).real(), rho.matrix()(r, c).imag()});
        }
        rows.push_back(row);
    }
    return rows;
}

nlohmann::json to_json(const SuperpositionReport& report) {
    nlohmann::json support = nlohmann::json::array();
    for (const auto& e : report.support) {
        support.push_back({{"bits", e.bits},
                           {"probability", e.probability},
                           {"amplitude", {e.amplitude.real(), e.amplitude.imag()}}});
    }
    return {{"superposed", report.superposed}, {"support", support}};
}

nlohmann::json to_json(const SeparabilityReport& report) {
    nlohmann::json qubits = nlohmann::json::array();
    for (const auto& q : report.qubits) {
        qubits.push_back({{"qubit", q.qubit}, {"purity", q.purity}, {"entangled", q.entangled}});
    }
    nlohmann::json j = {{"qubits", qubits}, {"threshold", report.threshold}, {"method", report.method}};
    if (!report.bipartitions.empty()) {
        nlohmann::json parts = nlohmann::json::array();
        for (const auto& b : report.bipartitions) {
            parts.push_back({{"partition", b.part}, {"purity", b.purity}, {"entangled", b.entangled}});
        }
        j["bipartitions"] = parts;
    }
    return j;
}

nlohmann::json to_json(const PreparationMatch& match) {
    return {{"index", match.index},
            {"name", match.name},
            {"initial", match.initial},
            {"operators", match.operators},
            {"description", match.description}};
}

}  // namespace qdb::debug
