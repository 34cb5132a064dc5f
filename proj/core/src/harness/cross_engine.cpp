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

#include "qdb/harness/cross_engine.hpp"

#include "qdb/errors.hpp"
#include "qdb/state/gates.hpp"

namespace qdb::harness {

CrossEngineReport cross_engine_verify(const qasm::CircuitIR& ir, const std::vector<sim::EngineConfig>& configs,
                                      std::uint64_t shots, double alpha, double state_tolerance) {
    if (configs.size() < 2) throw Error(ErrorCode::OutOfRange, "cross-engine verification needs at least two engines");
    if (shots == 0) throw Error(ErrorCode::OutOfRange, "shots must be positive");

    CrossEngineReport report;
    std::vector<std::optional<QuantumState>> states(configs.size());
    const bool unitary = ir.is_unitary();
    for (std::size_t i = 0; i < configs.size(); ++i) {
        report.runs.push_back(sim::execute(ir, configs[i], shots));
        if (unitary) {
            sim::EngineConfig single = configs[i];
            single.record_statevector = true;
            states[i] = sim::execute(ir, single, 1).final_state;
        }
    }

    report.pass = true;
    for (std::size_t a = 0; a < configs.size(); ++a) {
        for (std::size_t b = a + 1; b < configs.size(); ++b) {
            PairVerdict p;
            p.first = a;
            p.second = b;
            p.counts = compare_samples(report.runs[a].counts, report.runs[b].counts, alpha);
            p.identical_counts = report.runs[a].counts == report.runs[b].counts;
            p.pass = p.counts.pass;
            if (unitary) {
                p.states_match = equal_up_to_global_phase(*states[a], *states[b], state_tolerance);
                p.pass = p.pass && *p.states_match;
            }
            if (!p.pass && report.witness.empty()) {
                report.witness = report.runs[a].engine + " vs " + report.runs[b].engine + ": ";
                if (p.states_match && !*p.states_match) {
                    report.witness += "final states differ";
                } else {
                    report.witness += "counts differ (p = " + std::to_string(p.counts.p_value) +
                                      ", tvd = " + std::to_string(p.counts.tvd) + ")";
                }
            }
            report.pass = report.pass && p.pass;
            report.pairs.push_back(p);
        }
    }
    return report;
}

nlohmann::json to_json(const CrossEngineReport& report) {
    nlohmann::json runs = nlohmann::json::array();
    for (const auto& r : report.runs) runs.push_back(sim::run_result_to_json(r, false));
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& p : report.pairs) {
        nlohmann::json j = {{"engines", {report.runs[p.first].engine, report.runs[p.second].engine}},
                            {"counts", to_json(p.counts)},
                            {"identical_counts", p.identical_counts},
                            {"verdict", p.pass ? "pass" : "fail"}};
        if (p.states_match) j["states_match"] = *p.states_match;
        pairs.push_back(j);
    }
    nlohmann::json j = {{"verdict", report.pass ? "pass" : "fail"}, {"runs", runs}, {"pairs", pairs}};
    if (!report.pass) j["witness"] = report.witness;
    return j;
}

}  // namespace qdb::harness
