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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qdb/qasm/ir.hpp"
#include "qdb/state/density.hpp"
#include "qdb/state/state.hpp"

namespace qdb::debug {

/// A state counts as superposed when no basis probability reaches this.
inline constexpr double kSuperpositionThreshold = 1.0 - 1e-10;
inline constexpr double kSupportCutoff = 1e-10;
/// Reduced states below this purity are flagged entangled.
inline constexpr double kEntangledPurity = 1.0 - 1e-6;
inline constexpr std::size_t kMaxBipartitionQubits = 10;

struct SupportEntry {
    std::string bits;
    double probability = 0.0;
    Complex amplitude;
};

struct SuperpositionReport {
    bool superposed = false;
    /// Basis states above kSupportCutoff, most probable first.
    std::vector<SupportEntry> support;
};

nlohmann::json to_json(const SuperpositionReport& report);

SuperpositionReport superposition_of(const QuantumState& state);

/// Regenerates U|initial> for the measurement-free instructions [0, end) and
/// reports its support. `initial` is a basis label over all program qubits;
/// nullopt (or anything that is not such a label) throws UnknownInput, and a
/// measurement or conditional in the range throws NonUnitaryPrefix.
SuperpositionReport check_superposition_known_input(const qasm::CircuitIR& ir, std::size_t end,
                                                    const std::optional<std::string>& initial);

struct QubitSeparability {
    std::size_t qubit = 0;
    double purity = 1.0;
    bool entangled = false;
};

struct BipartitionResult {
    std::vector<std::size_t> part;  // the side that contains qubit 0
    double purity = 1.0;
    bool entangled = false;
};

struct SeparabilityReport {
    std::vector<QubitSeparability> qubits;
    std::vector<BipartitionResult> bipartitions;
    /// Purity below which a qubit was flagged; kEntangledPurity unless the
    /// purities were estimated from samples.
    double threshold = kEntangledPurity;
    /// "exact" or "tomography".
    std::string method = "exact";
};

nlohmann::json to_json(const SeparabilityReport& report);

/// Per-qubit purity of a pure global state. With `bipartitions` (n <= 10)
/// every cut containing qubit 0 on one side is checked as well.
SeparabilityReport separability_report(const QuantumState& state, bool bipartitions = false);
/// Same for a density matrix, which must itself be pure (MixedGlobalState).
SeparabilityReport separability_report(const DensityMatrix& rho, bool bipartitions = false);

/// A named way of producing a state: run `ir` from basis state `initial`.
struct Preparation {
    std::string name;
    std::shared_ptr<const qasm::CircuitIR> ir;
    std::string initial;
};

struct PreparationMatch {
    std::size_t index = 0;
    std::string name;
    std::string initial;
    /// Operator layers, last applied first, e.g. {"CNOT ⊗ H", "H ⊗ I4"}.
    std::vector<std::string> operators;
    /// "(CNOT ⊗ H)(H ⊗ I4)|001⟩".
    std::string description;
};

nlohmann::json to_json(const PreparationMatch& match);

/// The first candidate whose regenerated state equals `target` up to global
/// phase (entrywise within tol).
std::optional<PreparationMatch> describe_as_known_preparation(const QuantumState& target,
                                                              const std::vector<Preparation>& candidates,
                                                              double tol = 1e-9);

/// Groups a measurement-free program's gate applications into as-late-as-
/// possible layers and renders each as a Kronecker product. Idle runs of k
/// qubits print as I followed by 2^k. Layers are returned last applied first.
std::vector<std::string> operator_layers(const qasm::CircuitIR& ir);

/// Rows of [re, im] pairs.
nlohmann::json density_to_json(const DensityMatrix& rho);

}  // namespace qdb::debug
