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

#include "qdb/debug/tomography.hpp"

#include <algorithm>
#include <numbers>
#include <set>

#include "qdb/debug/analysis.hpp"
#include "qdb/errors.hpp"
#include "qdb/sim/rng.hpp"
#include "qdb/state/gates.hpp"

namespace qdb::debug {

namespace {

using std::numbers::pi;

qasm::Instruction rotation(std::size_t qubit, Pauli p) {
    qasm::Instruction ins;
    ins.kind = qasm::OpKind::U;
    ins.qubits = {qubit};
    ins.op_qubits = {qubit};
    // X basis: H. Y basis: H S^dagger.
    ins.params = p == Pauli::X ? std::array<double, 3>{pi / 2, 0.0, pi} : std::array<double, 3>{pi / 2, 0.0, pi / 2};
    ins.label = p == Pauli::X ? "h" : "h*sdg";
    return ins;
}

QuantumState prepare_exact(const qasm::CircuitIR& ir, std::size_t end, const std::vector<sim::StateHook>& hooks) {
    QuantumState state(ir.n_qubits);
    auto run_hooks = [&](std::size_t pos) {
        for (const auto& h : hooks) {
            if (h.position == pos) h.apply(state);
        }
    };
    for (std::size_t i = 0; i < end; ++i) {
        run_hooks(i);
        sim::apply_unitary_range(ir, i, i + 1, state);
    }
    run_hooks(end);
    return state;
}

}  // namespace

TomographyResult tomography(const qasm::CircuitIR& preparation, const TomographyOptions& options) {
    const std::size_t k = options.qubits.size();
    if (k > kMaxTomographyQubits) {
        throw Error(ErrorCode::TooManyQubits,
                    "tomography supports at most " + std::to_string(kMaxTomographyQubits) + " qubits, got " + std::to_string(k));
    }
    if (k == 0) throw Error(ErrorCode::OutOfRange, "no qubits selected");
    std::set<std::size_t> distinct(options.qubits.begin(), options.qubits.end());
    if (distinct.size() != k) throw Error(ErrorCode::SameQubit, "tomography qubits must be distinct");
    for (std::size_t q : options.qubits) {
        if (q >= preparation.n_qubits) throw Error(ErrorCode::IndexOutOfRange, "qubit " + std::to_string(q) + " out of range");
    }
    const std::size_t end = std::min(options.end, preparation.instructions.size());
    for (std::size_t i = 0; i < end; ++i) {
        const auto& ins = preparation.instructions[i];
        if (ins.kind == qasm::OpKind::Measure || ins.kind == qasm::OpKind::Reset || ins.condition) {
            throw Error(ErrorCode::NonUnitaryPreparation, "preparation contains a " +
                                                              std::string(qasm::op_kind_name(ins.kind)) +
                                                              (ins.condition ? " under a condition" : ""));
        }
    }
    if (!options.exact && options.shots_per_setting == 0) throw Error(ErrorCode::OutOfRange, "shots must be positive");

    TomographyResult result;
    result.qubits = options.qubits;
    result.exact = options.exact;
    result.shots_per_setting = options.exact ? 0 : options.shots_per_setting;

    std::optional<QuantumState> exact_state;
    if (options.exact) exact_state = prepare_exact(preparation, end, options.hooks);

    qasm::CircuitIR rotated = preparation;
    rotated.instructions.resize(end);
    rotated.directives.clear();

    const std::size_t dim = std::size_t{1} << k;
    Eigen::MatrixXcd estimate = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    const CounterRng seeds(options.engine.seed);
    std::uint64_t setting = 0;
    for (const PauliString& p : PauliString::all(k)) {
        if (p.is_identity()) continue;
        double value = 0.0;
        if (exact_state) {
            std::vector<Pauli> full(preparation.n_qubits, Pauli::I);
            for (std::size_t j = 0; j < k; ++j) full[options.qubits[j]] = p[j];
            value = pauli_expectation(*exact_state, PauliString(full));
        } else {
            rotated.instructions.resize(end);
            for (std::size_t j = 0; j < k; ++j) {
                if (p[j] == Pauli::X || p[j] == Pauli::Y) rotated.instructions.push_back(rotation(options.qubits[j], p[j]));
            }
            sim::EngineConfig config = options.engine;
            config.seed = seeds.substream(setting)();
            config.trace = nullptr;
            sim::SampleSpec spec;
            spec.qubits = options.qubits;
            spec.hooks = options.hooks;
            const auto counts = sim::sample_prefix(rotated, rotated.instructions.size(), spec, config,
                                                   options.shots_per_setting);
            double sum = 0.0;
            for (const auto& [bits, n] : counts) {
                int parity = 0;
                for (std::size_t j = 0; j < k; ++j) {
                    if (p[j] != Pauli::I && bits[j] == '1') parity ^= 1;
                }
                sum += (parity ? -1.0 : 1.0) * static_cast<double>(n);
            }
            value = sum / static_cast<double>(options.shots_per_setting);
        }
        ++setting;
        result.settings.push_back(p.str());
        result.expectations[p.str()] = value;
        estimate += value * p.matrix();
    }
    estimate /= static_cast<double>(dim);
    result.estimate = project_to_density(estimate);
    if (options.reference) result.fidelity = fidelity(*options.reference, result.estimate);
    return result;
}

nlohmann::json to_json(const TomographyResult& result) {
    nlohmann::json j = {{"qubits", result.qubits},
                        {"estimate", density_to_json(result.estimate)},
                        {"shots_per_setting", result.shots_per_setting},
                        {"exact", result.exact},
                        {"settings", result.settings},
                        {"expectations", result.expectations},
                        {"purity", purity(result.estimate)}};
    j["fidelity"] = result.fidelity ? nlohmann::json(*result.fidelity) : nlohmann::json(nullptr);
    return j;
}

}  // namespace qdb::debug
