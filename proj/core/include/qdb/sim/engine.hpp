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

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qdb/qasm/ir.hpp"
#include "qdb/sim/backend.hpp"
#include "qdb/sim/rng.hpp"
#include "qdb/state/state.hpp"

namespace qdb::sim {

/// What happened when one instruction ran.
struct TraceEvent {
    std::uint64_t shot = 0;
    std::size_t index = 0;
    qasm::OpKind kind = qasm::OpKind::U;
    std::vector<std::size_t> qubits;
    std::optional<std::size_t> clbit;
    bool applied = true;       // false when a condition was not met
    std::optional<int> outcome;  // measure / reset draws
    double norm = 1.0;         // squared norm after the instruction
    std::optional<QuantumState> snapshot;
};

nlohmann::json trace_event_to_json(const TraceEvent& event);

struct EngineConfig {
    Method method = Method::DenseInplace;
    std::uint64_t seed = 0;
    /// 0 selects the method default (20 dense, 10 naive).
    std::size_t max_qubits = 0;
    bool record_statevector = false;
    bool record_per_shot = false;
    /// Worker threads for multi-shot runs; results do not depend on it.
    std::size_t threads = 1;
    /// Squared-norm drift that aborts a shot with KernelCorruption.
    double norm_tolerance = 1e-6;
    /// Overrides `method` when set; used to plug in instrumented or faulty
    /// engines. `backend_label` names it in results.
    std::function<std::unique_ptr<Backend>()> backend_factory;
    std::string backend_label;
    /// Called after every instruction of every shot (forces one worker).
    std::function<void(const TraceEvent&)> trace;
    bool trace_snapshots = false;

    std::size_t capacity() const { return max_qubits ? max_qubits : default_max_qubits(method); }
    std::string engine_name() const;
};

struct RunResult {
    /// Clbit strings, clbit 0 leftmost.
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t shots = 0;
    /// Only with shots == 1 and record_statevector.
    std::optional<QuantumState> final_state;
    std::vector<std::string> per_shot;
    std::chrono::nanoseconds elapsed{0};
    std::string engine;
    std::uint64_t seed = 0;
};

nlohmann::json state_to_json(const QuantumState& state);
QuantumState state_from_json(const nlohmann::json& j);
nlohmann::json run_result_to_json(const RunResult& result, bool include_timing = true);

/// Runs `shots` independent shots. Shot i draws from CounterRng(seed).substream(i).
/// Throws CapacityExceeded when the program is wider than the engine allows
/// and KernelCorruption when the norm drifts.
RunResult execute(const qasm::CircuitIR& ir, const EngineConfig& config, std::uint64_t shots = 1);

/// A transformation applied to the register just before instruction
/// `position` runs (or at the end when position == instruction count).
struct StateHook {
    std::size_t position = 0;
    std::function<void(QuantumState&)> apply;
};

/// What to read at the end of a sampled prefix: fresh measurements of
/// `qubits` (in order) followed by the current values of `clbits`.
struct SampleSpec {
    std::vector<std::size_t> qubits;
    std::vector<std::size_t> clbits;
    std::vector<StateHook> hooks;
};

/// Re-executes instructions [0, end) `shots` times, then reads the SampleSpec.
/// Keys concatenate the qubit bits and then the clbit bits.
std::map<std::string, std::uint64_t> sample_prefix(const qasm::CircuitIR& ir, std::size_t end,
                                                   const SampleSpec& spec, const EngineConfig& config,
                                                   std::uint64_t shots);

/// Applies the measurement-free range [begin, end) of `ir` to `state` with the
/// dense kernels. Throws NonUnitaryPrefix if the range measures, resets, or
/// branches on a classical register.
void apply_unitary_range(const qasm::CircuitIR& ir, std::size_t begin, std::size_t end, QuantumState& state);

/// Single-shot stepping over a program. Amplitude reads through state() are
/// counted so callers can prove they never peeked.
class ExecutionCursor {
 public:
    ExecutionCursor(std::shared_ptr<const qasm::CircuitIR> ir, EngineConfig config);

    const qasm::CircuitIR& ir() const noexcept { return *ir_; }
    std::shared_ptr<const qasm::CircuitIR> shared_ir() const noexcept { return ir_; }
    const EngineConfig& config() const noexcept { return config_; }

    /// Index of the next instruction to run.
    std::size_t position() const noexcept { return position_; }
    bool finished() const noexcept { return position_ >= ir_->instructions.size(); }

    /// Runs one instruction. Throws CursorExhausted at the end.
    TraceEvent step();
    /// Runs until position() == index (no-op if already there or past it).
    std::vector<TraceEvent> run_to(std::size_t index);
    std::vector<TraceEvent> run_to_end();

    const QuantumState& state() const;
    /// Write access for debugger tactics that act on the live register.
    QuantumState& mutable_state();
    std::size_t state_reads() const noexcept { return state_reads_; }
    /// Acts on the live register without counting as a read.
    void transform(const std::function<void(QuantumState&)>& f);

    const std::vector<std::uint8_t>& clbits() const noexcept { return clbits_; }
    std::string clbit_string() const;

 private:
    std::shared_ptr<const qasm::CircuitIR> ir_;
    EngineConfig config_;
    std::unique_ptr<Backend> backend_;
    CounterRng rng_;
    std::vector<std::uint8_t> clbits_;
    std::size_t position_ = 0;
    mutable std::size_t state_reads_ = 0;
};

}  // namespace qdb::sim
