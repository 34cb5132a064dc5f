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

#include "qdb/sim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "qdb/errors.hpp"

namespace qdb::sim {

using qasm::CircuitIR;
using qasm::Instruction;
using qasm::OpKind;

namespace {

std::unique_ptr<Backend> build_backend(const EngineConfig& config) {
    return config.backend_factory ? config.backend_factory() : make_backend(config.method);
}

void check_capacity(const CircuitIR& ir, const EngineConfig& config) {
    if (ir.n_qubits > config.capacity()) {
        throw Error(ErrorCode::CapacityExceeded, "program needs " + std::to_string(ir.n_qubits) +
                                                     " qubits; engine " + config.engine_name() +
                                                     " allows " + std::to_string(config.capacity()));
    }
}

std::uint64_t register_value(const std::vector<std::uint8_t>& clbits, const qasm::Condition& c) {
    std::uint64_t value = 0;
    for (std::size_t j = 0; j < c.size && j < 64; ++j) {
        if (clbits[c.offset + j]) value |= std::uint64_t{1} << j;
    }
    return value;
}

bool is_stochastic(const Instruction& ins) {
    return ins.kind == OpKind::Measure || ins.kind == OpKind::Reset || ins.condition.has_value();
}

int sample_bit(Backend& backend, std::size_t qubit, CounterRng& rng) {
    const double u = rng.uniform();
    const double p1 = backend.probability_of_one(qubit);
    const int bit = u < 1.0 - p1 ? 0 : 1;
    backend.collapse(qubit, bit);
    return bit;
}

TraceEvent run_instruction(const Instruction& ins, std::size_t index, Backend& backend, CounterRng& rng,
                           std::vector<std::uint8_t>& clbits, const EngineConfig& config, std::uint64_t shot) {
    TraceEvent ev;
    ev.shot = shot;
    ev.index = index;
    ev.kind = ins.kind;
    ev.qubits = ins.qubits;
    if (ins.condition && register_value(clbits, *ins.condition) != ins.condition->value) {
        ev.applied = false;
        return ev;
    }
    switch (ins.kind) {
        case OpKind::U:
            backend.apply_u(ins.params, ins.qubits[0]);
            break;
        case OpKind::CX:
            backend.apply_cx(ins.qubits[0], ins.qubits[1]);
            break;
        case OpKind::Measure: {
            const int bit = sample_bit(backend, ins.qubits[0], rng);
            clbits[ins.clbit] = static_cast<std::uint8_t>(bit);
            ev.outcome = bit;
            ev.clbit = ins.clbit;
            break;
        }
        case OpKind::Reset: {
            // measure, then flip a 1 back to 0
            const int bit = sample_bit(backend, ins.qubits[0], rng);
            if (bit) backend.apply_u({std::numbers::pi, 0.0, std::numbers::pi}, ins.qubits[0]);
            ev.outcome = bit;
            break;
        }
        case OpKind::Barrier:
            return ev;
    }
    ev.norm = backend.state().norm_squared();
    if (std::abs(ev.norm - 1.0) > config.norm_tolerance) {
        throw Error(ErrorCode::KernelCorruption, "norm drifted to " + std::to_string(ev.norm) +
                                                     " after instruction " + std::to_string(index));
    }
    return ev;
}

const std::vector<StateHook> kNoHooks;

/// Shared shot loop for execute() and sample_prefix(). The measurement-free
/// head of the program is simulated once and copied into each shot.
class ShotExecutor {
 public:
    ShotExecutor(const CircuitIR& ir, const EngineConfig& config, std::size_t end,
                 const std::vector<StateHook>* hooks = nullptr)
        : ir_(ir), config_(config), end_(std::min(end, ir.instructions.size())), root_(config.seed),
          hooks_(hooks ? *hooks : kNoHooks) {
        check_capacity(ir, config);
        if (!config.trace) {
            std::size_t limit = end_;
            for (const auto& h : hooks_) limit = std::min(limit, h.position);
            head_ = 0;
            while (head_ < limit && !is_stochastic(ir.instructions[head_])) ++head_;
            if (head_ > 0) {
                auto backend = build_backend(config);
                backend->reset(ir.n_qubits);
                std::vector<std::uint8_t> clbits(ir.n_clbits, 0);
                CounterRng unused(0);
                for (std::size_t i = 0; i < head_; ++i) {
                    run_instruction(ir.instructions[i], i, *backend, unused, clbits, config, 0);
                }
                head_state_ = backend->state();
            }
        }
    }

    /// Runs shot `shot` to `end_`, leaving the backend and clbits at that point.
    CounterRng run(Backend& backend, std::uint64_t shot, std::vector<std::uint8_t>& clbits) const {
        CounterRng rng = root_.substream(shot);
        std::fill(clbits.begin(), clbits.end(), 0);
        std::size_t start = 0;
        if (head_state_) {
            backend.load(*head_state_);
            start = head_;
        } else {
            backend.reset(ir_.n_qubits);
        }
        for (std::size_t i = start; i < end_; ++i) {
            apply_hooks(backend, i);
            TraceEvent ev = run_instruction(ir_.instructions[i], i, backend, rng, clbits, config_, shot);
            if (config_.trace) {
                if (config_.trace_snapshots) ev.snapshot = backend.state();
                config_.trace(ev);
            }
        }
        apply_hooks(backend, end_);
        return rng;
    }

    /// Calls body(shot, backend, clbits, rng) for every shot, split across workers.
    template <typename Body>
    void for_each_shot(std::uint64_t shots, Body&& body) const {
        std::size_t workers = config_.trace ? 1 : std::max<std::size_t>(1, config_.threads);
        workers = static_cast<std::size_t>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(shots, 1)));
        auto work = [&](std::size_t worker) {
            auto backend = build_backend(config_);
            std::vector<std::uint8_t> clbits(ir_.n_clbits, 0);
            for (std::uint64_t shot = worker; shot < shots; shot += workers) {
                CounterRng rng = run(*backend, shot, clbits);
                body(worker, shot, *backend, clbits, rng);
            }
        };
        if (workers == 1) {
            work(0);
            return;
        }
        std::vector<std::exception_ptr> errors(workers);
        {
            std::vector<std::jthread> pool;
            for (std::size_t w = 0; w < workers; ++w) {
                pool.emplace_back([&, w] {
                    try {
                        work(w);
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
            }
        }
        for (auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }

    std::size_t workers(std::uint64_t shots) const {
        std::size_t w = config_.trace ? 1 : std::max<std::size_t>(1, config_.threads);
        return static_cast<std::size_t>(std::min<std::uint64_t>(w, std::max<std::uint64_t>(shots, 1)));
    }

 private:
    void apply_hooks(Backend& backend, std::size_t position) const {
        for (const auto& h : hooks_) {
            if (h.position == position) h.apply(backend.state());
        }
    }

    const CircuitIR& ir_;
    const EngineConfig& config_;
    std::size_t end_;
    CounterRng root_;
    const std::vector<StateHook>& hooks_;
    std::size_t head_ = 0;
    std::optional<QuantumState> head_state_;
};

std::string bits_of(const std::vector<std::uint8_t>& clbits) {
    std::string out(clbits.size(), '0');
    for (std::size_t i = 0; i < clbits.size(); ++i) out[i] = clbits[i] ? '1' : '0';
    return out;
}

}  // namespace

std::string EngineConfig::engine_name() const {
    if (backend_factory) return backend_label.empty() ? "custom" : backend_label;
    return std::string(method_name(method));
}

RunResult execute(const CircuitIR& ir, const EngineConfig& config, std::uint64_t shots) {
    const auto start = std::chrono::steady_clock::now();
    ShotExecutor executor(ir, config, ir.instructions.size());
    RunResult result;
    result.shots = shots;
    result.engine = config.engine_name();
    result.seed = config.seed;

    const std::size_t workers = executor.workers(shots);
    std::vector<std::map<std::string, std::uint64_t>> partial(workers);
    if (config.record_per_shot) result.per_shot.resize(shots);
    const bool keep_state = shots == 1 && config.record_statevector;

    executor.for_each_shot(shots, [&](std::size_t worker, std::uint64_t shot, Backend& backend,
                                      const std::vector<std::uint8_t>& clbits, CounterRng&) {
        std::string key = bits_of(clbits);
        if (config.record_per_shot) result.per_shot[shot] = key;
        ++partial[worker][key];
        if (keep_state) result.final_state = backend.state();
    });
    for (const auto& p : partial) {
        for (const auto& [k, v] : p) result.counts[k] += v;
    }
    result.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start);
    return result;
}

std::map<std::string, std::uint64_t> sample_prefix(const CircuitIR& ir, std::size_t end, const SampleSpec& spec,
                                                   const EngineConfig& config, std::uint64_t shots) {
    for (std::size_t q : spec.qubits) {
        if (q >= ir.n_qubits) throw Error(ErrorCode::IndexOutOfRange, "sampled qubit out of range");
    }
    for (std::size_t c : spec.clbits) {
        if (c >= ir.n_clbits) throw Error(ErrorCode::IndexOutOfRange, "sampled clbit out of range");
    }
    ShotExecutor executor(ir, config, end, &spec.hooks);
    std::vector<std::map<std::string, std::uint64_t>> partial(executor.workers(shots));
    executor.for_each_shot(shots, [&](std::size_t worker, std::uint64_t, Backend& backend,
                                      const std::vector<std::uint8_t>& clbits, CounterRng& rng) {
        std::string key;
        for (std::size_t q : spec.qubits) key.push_back(sample_bit(backend, q, rng) ? '1' : '0');
        for (std::size_t c : spec.clbits) key.push_back(clbits[c] ? '1' : '0');
        ++partial[worker][key];
    });
    std::map<std::string, std::uint64_t> counts;
    for (const auto& p : partial) {
        for (const auto& [k, v] : p) counts[k] += v;
    }
    return counts;
}

void apply_unitary_range(const CircuitIR& ir, std::size_t begin, std::size_t end, QuantumState& state) {
    if (state.n_qubits() != ir.n_qubits) {
        throw Error(ErrorCode::DimensionMismatch, "state width does not match the program");
    }
    end = std::min(end, ir.instructions.size());
    for (std::size_t i = begin; i < end; ++i) {
        if (is_stochastic(ir.instructions[i])) {
            throw Error(ErrorCode::NonUnitaryPrefix,
                        "instruction " + std::to_string(i) + " (" + std::string(qasm::op_kind_name(ir.instructions[i].kind)) +
                            ") is not unitary");
        }
    }
    for (std::size_t i = begin; i < end; ++i) {
        const Instruction& ins = ir.instructions[i];
        if (ins.kind == OpKind::U) {
            apply_1q(state, gates::u(ins.params[0], ins.params[1], ins.params[2]), ins.qubits[0]);
        } else if (ins.kind == OpKind::CX) {
            apply_cx(state, ins.qubits[0], ins.qubits[1]);
        }
    }
}

// --- cursor ------------------------------------------------------------------

ExecutionCursor::ExecutionCursor(std::shared_ptr<const CircuitIR> ir, EngineConfig config)
    : ir_(std::move(ir)), config_(std::move(config)), backend_(build_backend(config_)),
      rng_(CounterRng(config_.seed).substream(0)), clbits_(ir_->n_clbits, 0) {
    check_capacity(*ir_, config_);
    backend_->reset(ir_->n_qubits);
}

TraceEvent ExecutionCursor::step() {
    if (finished()) throw Error(ErrorCode::CursorExhausted, "program already finished");
    TraceEvent ev = run_instruction(ir_->instructions[position_], position_, *backend_, rng_, clbits_, config_, 0);
    ++position_;
    if (config_.trace) config_.trace(ev);
    return ev;
}

std::vector<TraceEvent> ExecutionCursor::run_to(std::size_t index) {
    std::vector<TraceEvent> events;
    index = std::min(index, ir_->instructions.size());
    while (position_ < index) events.push_back(step());
    return events;
}

std::vector<TraceEvent> ExecutionCursor::run_to_end() { return run_to(ir_->instructions.size()); }

const QuantumState& ExecutionCursor::state() const {
    ++state_reads_;
    return backend_->state();
}

QuantumState& ExecutionCursor::mutable_state() {
    ++state_reads_;
    return backend_->state();
}

void ExecutionCursor::transform(const std::function<void(QuantumState&)>& f) { f(backend_->state()); }

std::string ExecutionCursor::clbit_string() const { return bits_of(clbits_); }

// --- JSON ----------------------------------------------------------------------

nlohmann::json state_to_json(const QuantumState& state) {
    nlohmann::json amps = nlohmann::json::array();
    for (const Complex& a : state.amplitudes()) amps.push_back({a.real(), a.imag()});
    return {{"n_qubits", state.n_qubits()}, {"amplitudes", amps}, {"ordering", "q0-leftmost"}};
}

QuantumState state_from_json(const nlohmann::json& j) {
    std::vector<Complex> amps;
    for (const auto& a : j.at("amplitudes")) amps.emplace_back(a.at(0).get<double>(), a.at(1).get<double>());
    QuantumState s = QuantumState::from_amplitudes(std::move(amps), true);
    if (s.n_qubits() != j.at("n_qubits").get<std::size_t>()) {
        throw Error(ErrorCode::DimensionMismatch, "n_qubits does not match amplitude count");
    }
    return s;
}

nlohmann::json trace_event_to_json(const TraceEvent& ev) {
    nlohmann::json j = {{"shot", ev.shot},
                        {"index", ev.index},
                        {"kind", qasm::op_kind_name(ev.kind)},
                        {"qubits", ev.qubits},
                        {"applied", ev.applied},
                        {"norm", ev.norm}};
    if (ev.clbit) j["clbit"] = *ev.clbit;
    if (ev.outcome) j["outcome"] = *ev.outcome;
    if (ev.snapshot) j["snapshot"] = state_to_json(*ev.snapshot);
    return j;
}

nlohmann::json run_result_to_json(const RunResult& result, bool include_timing) {
    nlohmann::json j = {{"counts", result.counts},
                        {"shots", result.shots},
                        {"engine", {{"method", result.engine}, {"seed", result.seed}}},
                        {"final_state", result.final_state ? state_to_json(*result.final_state) : nlohmann::json(nullptr)}};
    if (!result.per_shot.empty()) j["per_shot"] = result.per_shot;
    if (include_timing) j["elapsed_ms"] = std::chrono::duration<double, std::milli>(result.elapsed).count();
    return j;
}

}  // namespace qdb::sim
