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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qdb/harness/stats.hpp"
#include "qdb/qasm/ir.hpp"
#include "qdb/sim/engine.hpp"

namespace qdb::harness {

struct PairVerdict {
    std::size_t first = 0;
    std::size_t second = 0;
    DistributionVerdict counts;
    bool identical_counts = false;
    /// Only for measurement-free programs: final states equal up to phase.
    std::optional<bool> states_match;
    bool pass = false;
};

struct CrossEngineReport {
    bool pass = false;
    std::vector<sim::RunResult> runs;
    std::vector<PairVerdict> pairs;
    /// Describes the first failing pair; empty on pass.
    std::string witness;
};

nlohmann::json to_json(const CrossEngineReport& report);

/// Runs `ir` under every config and compares each pair with a two-sample
/// chi-square test at `alpha`. Measurement-free programs additionally compare
/// single-shot final states within `state_tolerance`. Throws OutOfRange with
/// fewer than two configs.
CrossEngineReport cross_engine_verify(const qasm::CircuitIR& ir, const std::vector<sim::EngineConfig>& configs,
                                      std::uint64_t shots, double alpha = kDefaultAlpha,
                                      double state_tolerance = 1e-9);

}  // namespace qdb::harness
