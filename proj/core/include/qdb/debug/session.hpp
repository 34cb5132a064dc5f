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
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qdb/debug/analysis.hpp"
#include "qdb/debug/cloning.hpp"
#include "qdb/debug/tomography.hpp"
#include "qdb/qasm/ir.hpp"
#include "qdb/sim/engine.hpp"

namespace qdb::debug {

/// Omniscient reads amplitudes of the live state. Device mode only ever sees
/// measurement outcomes of re-executed prefixes.
enum class Mode { Omniscient, Device };

std::string_view mode_name(Mode mode);
/// "omniscient" or "device" (also "device-faithful"); throws OutOfRange.
Mode parse_mode(std::string_view text);

enum class Verdict { Pass, Fail, Inconclusive };

std::string_view verdict_name(Verdict verdict);
/// Fail > Inconclusive > Pass.
Verdict worst(Verdict a, Verdict b);

struct AssertionResult {
    qasm::Directive directive;
    Verdict verdict = Verdict::Pass;
    nlohmann::json evidence = nlohmann::json::object();
    std::uint64_t shots = 0;
    std::optional<double> p_value;
    std::string message;
};

nlohmann::json to_json(const AssertionResult& result);

struct Inspection {
    Mode mode = Mode::Omniscient;
    std::size_t position = 0;
    std::optional<QuantumState> state;             // omniscient
    std::map<std::string, std::uint64_t> histogram;  // device, all qubits q0-leftmost
    std::uint64_t shots = 0;
    std::string clbits;
};

/// Device-mode payloads have no "state" member at all.
nlohmann::json to_json(const Inspection& inspection);

enum class StopReason { Step, Breakpoint, Directive, Finished };

std::string_view stop_reason_name(StopReason reason);

struct StopEvent {
    StopReason reason = StopReason::Step;
    std::size_t position = 0;
    std::size_t steps = 0;
    std::vector<AssertionResult> assertions;
};

nlohmann::json to_json(const StopEvent& event);

struct SessionOptions {
    Mode mode = Mode::Omniscient;
    std::uint64_t seed = 0;
    /// Upper limit on shots for one statistical query in device mode.
    std::uint64_t shot_budget = 1060;
    sim::EngineConfig engine;
    bool evaluate_assertions = true;
};

/// Single-shot debugger over one program.
class DebugSession {
 public:
    explicit DebugSession(std::shared_ptr<const qasm::CircuitIR> ir, SessionOptions options = {});

    const qasm::CircuitIR& ir() const noexcept { return cursor_.ir(); }
    std::shared_ptr<const qasm::CircuitIR> shared_ir() const noexcept { return cursor_.shared_ir(); }
    const sim::ExecutionCursor& cursor() const noexcept { return cursor_; }

    Mode mode() const noexcept { return options_.mode; }
    void set_mode(Mode mode) { options_.mode = mode; }
    std::uint64_t shot_budget() const noexcept { return options_.shot_budget; }
    /// Throws OutOfRange on zero.
    void set_shot_budget(std::uint64_t shots);
    std::uint64_t seed() const noexcept { return options_.seed; }

    std::size_t position() const noexcept { return cursor_.position(); }
    bool finished() const noexcept { return cursor_.finished(); }

    /// Pauses before instruction `index`. Throws UnresolvableLocation.
    void add_breakpoint(std::size_t index);
    /// Pauses before the first instruction that starts on `line`; returns its
    /// index. Throws UnresolvableLocation when no instruction starts there.
    std::size_t add_breakpoint_at_line(std::size_t line);
    bool remove_breakpoint(std::size_t index);
    const std::set<std::size_t>& breakpoints() const noexcept { return breakpoints_; }

    /// Runs one instruction. Throws CursorExhausted when finished.
    StopEvent step();
    /// Runs to the next breakpoint, `// @qdb break`, or the end. `tick` runs
    /// after every instruction.
    StopEvent resume(const std::function<void()>& tick = {});

    Inspection inspect();
    double probability_of_one(std::size_t qubit);
    SuperpositionReport check_superposition(const std::optional<std::string>& initial) const;
    SeparabilityReport separability(bool bipartitions = false);
    AssertionResult evaluate(const qasm::Directive& directive);

    /// Cloning tactics act on the live register and are replayed whenever a
    /// device-mode query re-executes the prefix.
    void clone_exact(const std::vector<std::size_t>& source, const std::vector<std::size_t>& blank);
    CloneReport clone_approx(std::size_t source, std::size_t copy, std::size_t ancilla);

    /// Tomography of the state at the current position. Exact mode is only
    /// available in omniscient mode (OutOfRange otherwise).
    TomographyResult tomography(const std::vector<std::size_t>& qubits, std::uint64_t shots_per_setting,
                                bool exact = false);

    const std::vector<AssertionResult>& assertion_results() const noexcept { return results_; }
    const std::vector<nlohmann::json>& event_log() const noexcept { return log_; }

 private:
    std::vector<AssertionResult> arrive();
    sim::EngineConfig query_config();
    std::map<std::string, std::uint64_t> sample(const sim::SampleSpec& spec, std::uint64_t shots);
    SeparabilityReport sampled_separability(const std::vector<std::size_t>& qubits, std::uint64_t shots);
    std::vector<double> marginal(const std::vector<std::size_t>& qubits) const;

    SessionOptions options_;
    sim::ExecutionCursor cursor_;
    std::set<std::size_t> breakpoints_;
    std::set<std::size_t> directive_breaks_;
    std::set<std::size_t> evaluated_;
    std::vector<sim::StateHook> tactics_;
    std::vector<AssertionResult> results_;
    std::vector<nlohmann::json> log_;
    std::uint64_t queries_ = 0;
};

}  // namespace qdb::debug
