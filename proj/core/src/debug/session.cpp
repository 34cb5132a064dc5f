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

#include "qdb/debug/session.hpp"

#include <algorithm>
#include <cmath>

#include "qdb/errors.hpp"
#include "qdb/harness/stats.hpp"
#include "qdb/qasm/serialize.hpp"
#include "qdb/sim/rng.hpp"

namespace qdb::debug {

namespace {

constexpr double kClassicalThreshold = 1.0 - 1e-9;
constexpr double kAssertionDelta = 0.01;

std::string bits_of(std::size_t value, std::size_t width) { return basis_label(value, width); }

}  // namespace

std::string_view mode_name(Mode mode) { return mode == Mode::Omniscient ? "omniscient" : "device"; }

Mode parse_mode(std::string_view text) {
    if (text == "omniscient") return Mode::Omniscient;
    if (text == "device" || text == "device-faithful") return Mode::Device;
    throw Error(ErrorCode::OutOfRange, "unknown mode '" + std::string(text) + "' (omniscient | device)");
}

std::string_view verdict_name(Verdict verdict) {
    switch (verdict) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "fail";
}

Verdict worst(Verdict a, Verdict b) {
    if (a == Verdict::Fail || b == Verdict::Fail) return Verdict::Fail;
    if (a == Verdict::Inconclusive || b == Verdict::Inconclusive) return Verdict::Inconclusive;
    return Verdict::Pass;
}

std::string_view stop_reason_name(StopReason reason) {
    switch (reason) {
        case StopReason::Step: return "step";
        case StopReason::Breakpoint: return "breakpoint";
        case StopReason::Directive: return "directive";
        case StopReason::Finished: return "finished";
    }
    return "step";
}

// --- session -------------------------------------------------------------------

DebugSession::DebugSession(std::shared_ptr<const qasm::CircuitIR> ir, SessionOptions options)
    : options_(std::move(options)), cursor_(std::move(ir), [&] {
          sim::EngineConfig c = options_.engine;
          c.seed = options_.seed;
          c.trace = nullptr;
          return c;
      }()) {
    if (options_.shot_budget == 0) throw Error(ErrorCode::OutOfRange, "shot budget must be positive");
    for (const auto& d : cursor_.ir().directives) {
        if (d.kind == qasm::DirectiveKind::Break && d.anchor < cursor_.ir().instructions.size()) {
            directive_breaks_.insert(d.anchor);
        }
    }
}

void DebugSession::set_shot_budget(std::uint64_t shots) {
    if (shots == 0) throw Error(ErrorCode::OutOfRange, "shot budget must be positive");
    options_.shot_budget = shots;
}

void DebugSession::add_breakpoint(std::size_t index) {
    if (index >= ir().instructions.size()) {
        throw Error(ErrorCode::UnresolvableLocation, "no instruction " + std::to_string(index) + " (program has " +
                                                         std::to_string(ir().instructions.size()) + ")");
    }
    breakpoints_.insert(index);
}

std::size_t DebugSession::add_breakpoint_at_line(std::size_t line) {
    const auto hits = ir().instructions_at_line(line);
    if (hits.empty()) {
        throw Error(ErrorCode::UnresolvableLocation, "line " + std::to_string(line) + " has no instruction");
    }
    breakpoints_.insert(hits.front());
    return hits.front();
}

bool DebugSession::remove_breakpoint(std::size_t index) { return breakpoints_.erase(index) > 0; }

std::vector<AssertionResult> DebugSession::arrive() {
    std::vector<AssertionResult> out;
    if (!options_.evaluate_assertions) return out;
    const auto& directives = ir().directives;
    for (std::size_t i = 0; i < directives.size(); ++i) {
        const auto& d = directives[i];
        if (d.anchor != position() || d.kind == qasm::DirectiveKind::Break || evaluated_.count(i)) continue;
        evaluated_.insert(i);
        AssertionResult r = evaluate(d);
        results_.push_back(r);
        out.push_back(std::move(r));
    }
    return out;
}

StopEvent DebugSession::step() {
    StopEvent ev;
    ev.assertions = arrive();
    const sim::TraceEvent t = cursor_.step();
    log_.push_back({{"event", "step"}, {"trace", sim::trace_event_to_json(t)}});
    ev.steps = 1;
    auto more = arrive();
    ev.assertions.insert(ev.assertions.end(), more.begin(), more.end());
    ev.position = position();
    ev.reason = finished() ? StopReason::Finished : StopReason::Step;
    log_.push_back({{"event", "stopped"}, {"stop", to_json(ev)}});
    return ev;
}

StopEvent DebugSession::resume(const std::function<void()>& tick) {
    StopEvent ev;
    ev.assertions = arrive();
    while (!finished()) {
        cursor_.step();
        ++ev.steps;
        if (tick) tick();
        auto more = arrive();
        ev.assertions.insert(ev.assertions.end(), more.begin(), more.end());
        if (breakpoints_.count(position())) {
            ev.reason = StopReason::Breakpoint;
            break;
        }
        if (directive_breaks_.count(position())) {
            ev.reason = StopReason::Directive;
            break;
        }
    }
    if (finished()) ev.reason = StopReason::Finished;
    ev.position = position();
    log_.push_back({{"event", "stopped"}, {"stop", to_json(ev)}});
    return ev;
}

sim::EngineConfig DebugSession::query_config() {
    sim::EngineConfig c = options_.engine;
    c.trace = nullptr;
    c.record_statevector = false;
    c.record_per_shot = false;
    c.seed = CounterRng(options_.seed, 1).substream(queries_++)();
    return c;
}

std::map<std::string, std::uint64_t> DebugSession::sample(const sim::SampleSpec& spec, std::uint64_t shots) {
    sim::SampleSpec s = spec;
    s.hooks = tactics_;
    return sim::sample_prefix(ir(), position(), s, query_config(), shots);
}

std::vector<double> DebugSession::marginal(const std::vector<std::size_t>& qubits) const {
    const QuantumState& state = cursor_.state();
    std::vector<double> out(std::size_t{1} << qubits.size(), 0.0);
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        std::size_t key = 0;
        for (std::size_t q : qubits) key = (key << 1) | ((i & state.mask(q)) ? 1 : 0);
        out[key] += std::norm(state[i]);
    }
    return out;
}

Inspection DebugSession::inspect() {
    Inspection in;
    in.mode = mode();
    in.position = position();
    in.clbits = cursor_.clbit_string();
    if (mode() == Mode::Omniscient) {
        in.state = cursor_.state();
    } else {
        sim::SampleSpec spec;
        for (std::size_t q = 0; q < ir().n_qubits; ++q) spec.qubits.push_back(q);
        in.shots = shot_budget();
        in.histogram = sample(spec, in.shots);
    }
    log_.push_back({{"event", "inspect"}, {"mode", mode_name(mode())}, {"position", position()}});
    return in;
}

double DebugSession::probability_of_one(std::size_t qubit) {
    if (qubit >= ir().n_qubits) throw Error(ErrorCode::IndexOutOfRange, "qubit " + std::to_string(qubit) + " out of range");
    if (mode() == Mode::Omniscient) return marginal({qubit})[1];
    sim::SampleSpec spec;
    spec.qubits = {qubit};
    const auto counts = sample(spec, shot_budget());
    const auto it = counts.find("1");
    return it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(shot_budget());
}

SuperpositionReport DebugSession::check_superposition(const std::optional<std::string>& initial) const {
    if (!tactics_.empty()) {
        throw Error(ErrorCode::NonUnitaryPrefix, "a cloning tactic was applied; the prefix no longer describes the state");
    }
    return check_superposition_known_input(ir(), position(), initial);
}

SeparabilityReport DebugSession::sampled_separability(const std::vector<std::size_t>& qubits, std::uint64_t shots) {
    SeparabilityReport report;
    report.method = "tomography";
    const double eps = std::sqrt(std::log(2.0 / kAssertionDelta) / (2.0 * static_cast<double>(shots)));
    report.threshold = 1.0 - 2.0 * std::sqrt(3.0) * eps;
    for (std::size_t q : qubits) {
        TomographyOptions opts;
        opts.qubits = {q};
        opts.shots_per_setting = shots;
        opts.engine = query_config();
        opts.end = position();
        opts.hooks = tactics_;
        const double p = purity(debug::tomography(ir(), opts).estimate);
        report.qubits.push_back({q, p, p < report.threshold});
    }
    return report;
}

SeparabilityReport DebugSession::separability(bool bipartitions) {
    if (mode() == Mode::Omniscient) return separability_report(cursor_.state(), bipartitions);
    std::vector<std::size_t> all;
    for (std::size_t q = 0; q < ir().n_qubits; ++q) all.push_back(q);
    return sampled_separability(all, shot_budget());
}

AssertionResult DebugSession::evaluate(const qasm::Directive& d) {
    AssertionResult r;
    r.directive = d;
    if (d.kind == qasm::DirectiveKind::Break) {
        r.message = "break directives carry no check";
        return r;
    }
    const std::uint64_t required = harness::chernoff_shots(d.tolerance, kAssertionDelta).shots;
    const bool device = mode() == Mode::Device;
    const bool sampled = device || d.kind == qasm::DirectiveKind::AssertDistribution;
    if (sampled && device && shot_budget() < required) {
        r.verdict = Verdict::Inconclusive;
        r.message = "BudgetExhausted: needs " + std::to_string(required) + " shots, budget is " +
                    std::to_string(shot_budget());
        r.evidence = {{"required_shots", required}, {"shot_budget", shot_budget()}};
        return r;
    }
    if (sampled) r.shots = required;

    switch (d.kind) {
        case qasm::DirectiveKind::AssertClassical: {
            if (!device) {
                const auto m = marginal(d.qubits);
                const auto top = static_cast<std::size_t>(std::max_element(m.begin(), m.end()) - m.begin());
                const std::string dominant = bits_of(top, d.qubits.size());
                const double p_expected = m[basis_index(d.expected_bits)];
                r.evidence = {{"dominant", dominant}, {"probability", m[top]}, {"expected_probability", p_expected}};
                r.verdict = p_expected >= kClassicalThreshold ? Verdict::Pass : Verdict::Fail;
            } else {
                sim::SampleSpec spec;
                spec.qubits = d.qubits;
                const auto counts = sample(spec, required);
                r.evidence = {{"histogram", counts}};
                r.verdict = counts.size() == 1 && counts.begin()->first == d.expected_bits ? Verdict::Pass : Verdict::Fail;
            }
            if (r.verdict == Verdict::Fail) r.message = "register is not in |" + d.expected_bits + "⟩";
            break;
        }
        case qasm::DirectiveKind::AssertSuperposition: {
            if (!device) {
                const auto m = marginal(d.qubits);
                std::vector<std::pair<std::string, double>> support;
                double max_p = 0.0;
                for (std::size_t i = 0; i < m.size(); ++i) {
                    max_p = std::max(max_p, m[i]);
                    if (m[i] > kSupportCutoff) support.emplace_back(bits_of(i, d.qubits.size()), m[i]);
                }
                r.evidence = {{"support", support}, {"max_probability", max_p}};
                r.verdict = max_p < kSuperpositionThreshold ? Verdict::Pass : Verdict::Fail;
            } else {
                sim::SampleSpec spec;
                spec.qubits = d.qubits;
                const auto counts = sample(spec, required);
                r.evidence = {{"histogram", counts}};
                r.verdict = counts.size() > 1 ? Verdict::Pass : Verdict::Fail;
            }
            if (r.verdict == Verdict::Fail) r.message = "register is in a single basis state";
            break;
        }
        case qasm::DirectiveKind::AssertSeparable:
        case qasm::DirectiveKind::AssertEntangled: {
            const bool want_entangled = d.kind == qasm::DirectiveKind::AssertEntangled;
            SeparabilityReport rep;
            if (!device) {
                const SeparabilityReport full = separability_report(cursor_.state());
                rep.threshold = full.threshold;
                for (std::size_t q : d.qubits) rep.qubits.push_back(full.qubits[q]);
            } else {
                rep = sampled_separability(d.qubits, required);
                r.shots = required * 3 * d.qubits.size();
            }
            r.evidence = to_json(rep);
            r.verdict = Verdict::Pass;
            for (const auto& q : rep.qubits) {
                if (q.entangled != want_entangled) {
                    r.verdict = Verdict::Fail;
                    r.message = ir().qubit_name(q.qubit) + (q.entangled ? " is entangled" : " is separable") +
                                " (purity " + std::to_string(q.purity) + ")";
                    break;
                }
            }
            break;
        }
        case qasm::DirectiveKind::AssertDistribution: {
            sim::SampleSpec spec;
            if (d.classical_target) {
                spec.clbits = d.clbits;
            } else {
                spec.qubits = d.qubits;
            }
            const auto counts = sample(spec, required);
            const auto v = harness::compare_distributions(counts, d.expected_distribution, harness::kDefaultAlpha);
            r.p_value = v.p_value;
            r.evidence = {{"histogram", counts}, {"tvd", v.tvd}, {"chi_square", harness::to_json(v)["chi_square"]},
                          {"dof", v.dof}, {"tolerance", d.tolerance}, {"alpha", v.alpha}};
            const bool tvd_ok = v.tvd <= d.tolerance;
            r.verdict = tvd_ok && v.pass ? Verdict::Pass : Verdict::Fail;
            if (!tvd_ok) {
                r.message = "total variation " + std::to_string(v.tvd) + " exceeds " + std::to_string(d.tolerance);
            } else if (!v.pass) {
                r.message = "chi-square p-value " + std::to_string(v.p_value) + " below alpha";
            }
            break;
        }
        case qasm::DirectiveKind::Break:
            break;
    }
    log_.push_back({{"event", "assertion"}, {"result", to_json(r)}});
    return r;
}

void DebugSession::clone_exact(const std::vector<std::size_t>& source, const std::vector<std::size_t>& blank) {
    const bool check = mode() == Mode::Omniscient;
    if (check) {
        exact_clone_orthogonal(cursor_.mutable_state(), source, blank, true);
    } else {
        exact_clone_circuit(ir().n_qubits, source, blank);  // validates the registers
        cursor_.transform([&](QuantumState& s) { exact_clone_orthogonal(s, source, blank, false); });
    }
    tactics_.push_back({position(), [source, blank](QuantumState& s) { exact_clone_orthogonal(s, source, blank, false); }});
    log_.push_back({{"event", "clone-exact"}, {"source", source}, {"blank", blank}, {"position", position()}});
}

CloneReport DebugSession::clone_approx(std::size_t source, std::size_t copy, std::size_t ancilla) {
    CloneReport report;
    if (mode() == Mode::Omniscient) {
        report = universal_clone(cursor_.mutable_state(), source, copy, ancilla, true);
    } else {
        cursor_.transform([&](QuantumState& s) { universal_clone(s, source, copy, ancilla, false); });
    }
    tactics_.push_back({position(), [=](QuantumState& s) { universal_clone(s, source, copy, ancilla, false); }});
    log_.push_back({{"event", "clone-approx"}, {"source", source}, {"copy", copy}, {"ancilla", ancilla},
                    {"position", position()}});
    return report;
}

TomographyResult DebugSession::tomography(const std::vector<std::size_t>& qubits, std::uint64_t shots_per_setting,
                                          bool exact) {
    if (exact && mode() == Mode::Device) {
        throw Error(ErrorCode::OutOfRange, "exact tomography is not available in device mode");
    }
    TomographyOptions opts;
    opts.qubits = qubits;
    opts.shots_per_setting = shots_per_setting;
    opts.exact = exact;
    opts.engine = query_config();
    opts.end = position();
    opts.hooks = tactics_;
    return debug::tomography(ir(), opts);
}

// --- JSON ------------------------------------------------------------------------

nlohmann::json to_json(const AssertionResult& r) {
    nlohmann::json j = {{"directive", qasm::directive_to_json(r.directive)},
                        {"verdict", verdict_name(r.verdict)},
                        {"evidence", r.evidence},
                        {"shots", r.shots},
                        {"p_value", r.p_value ? nlohmann::json(*r.p_value) : nlohmann::json(nullptr)}};
    if (!r.message.empty()) j["message"] = r.message;
    return j;
}

nlohmann::json to_json(const Inspection& in) {
    nlohmann::json j = {{"mode", mode_name(in.mode)}, {"position", in.position}, {"clbits", in.clbits}};
    if (in.state) {
        j["state"] = sim::state_to_json(*in.state);
    } else {
        j["histogram"] = in.histogram;
        j["shots"] = in.shots;
    }
    return j;
}

nlohmann::json to_json(const StopEvent& ev) {
    nlohmann::json assertions = nlohmann::json::array();
    for (const auto& a : ev.assertions) assertions.push_back(to_json(a));
    return {{"reason", stop_reason_name(ev.reason)},
            {"position", ev.position},
            {"steps", ev.steps},
            {"assertions", assertions}};
}

}  // namespace qdb::debug
