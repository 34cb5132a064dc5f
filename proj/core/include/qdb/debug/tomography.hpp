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
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qdb/qasm/ir.hpp"
#include "qdb/sim/engine.hpp"
#include "qdb/state/density.hpp"

namespace qdb::debug {

inline constexpr std::size_t kMaxTomographyQubits = 3;

struct TomographyOptions {
    std::vector<std::size_t> qubits;
    std::uint64_t shots_per_setting = 10000;
    /// Use exact expectation values instead of sampling.
    bool exact = false;
    sim::EngineConfig engine;
    /// Pure state on the chosen qubits to report fidelity against.
    std::optional<QuantumState> reference;
    /// Only instructions [0, end) form the preparation.
    std::size_t end = std::numeric_limits<std::size_t>::max();
    std::vector<sim::StateHook> hooks;
};

struct TomographyResult {
    std::vector<std::size_t> qubits;
    DensityMatrix estimate;
    std::uint64_t shots_per_setting = 0;
    bool exact = false;
    /// Non-identity Pauli strings, one per measurement setting.
    std::vector<std::string> settings;
    std::map<std::string, double> expectations;
    std::optional<double> fidelity;
};

nlohmann::json to_json(const TomographyResult& result);

/// Linear-inversion tomography of the chosen qubits after a measurement-free
/// preparation, projected onto the density-matrix cone. Setting s samples with
/// its own seed derived from the engine seed. Throws TooManyQubits above
/// three qubits and NonUnitaryPreparation if the preparation measures.
TomographyResult tomography(const qasm::CircuitIR& preparation, const TomographyOptions& options);

}  // namespace qdb::debug
