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

#include "repl.hpp"

#include <iostream>
#include <sstream>

#include "qdb/debug/analysis.hpp"
#include "qdb/debug/cloning.hpp"
#include "qdb/debug/tomography.hpp"
#include "qdb/errors.hpp"
#include "qdb/harness/stats.hpp"

namespace qdb::cli {

namespace {

std::vector<std::string> split_words(std::string_view text) {
    std::vector<std::string> words;
    std::istringstream in{std::string(text)};
    for (std::string w; in >> w;) words.push_back(w);
    return words;
}

void require_args(const std::vector<std::string>& args, std::size_t min, std::size_t max, const char* usage) {
    if (args.size() < min || args.size() > max) throw UsageError(std::string("usage: ") + usage);
}

std::string location(const qasm::CircuitIR& ir, std::size_t position) {
    if (position >= ir.instructions.size()) return "end of program";
    return "#" + std::to_string(position) + " (line " + std::to_string(ir.instructions[position].span.line) + ")";
}

std::string describe(const debug::AssertionResult& r) {
    std::string s = "  " + std::string(qasm::directive_kind_name(r.directive.kind)) + " " + r.directive.target + ": " +
                    std::string(debug::verdict_name(r.verdict));
    if (r.p_value) s += " (p=" + format_real(*r.p_value) + ")";
    if (!r.message.empty()) s += "; " + r.message;
    return s + "\n";
}

}  // namespace

Repl::Repl(const Context& ctx, std::shared_ptr<const qasm::CircuitIR> ir, debug::SessionOptions options)
    : ctx_(ctx), session_(std::move(ir), std::move(options)) {}

std::string Repl::help_text() {
    return "commands:\n"
           "  step [n]                      run n instructions (default 1)\n"
           "  continue                      run to the next breakpoint or the end\n"
           "  break <line> | delete <line>  set or clear a breakpoint\n"
           "  where                         current position and breakpoints\n"
           "  state                         amplitudes (omniscient) or a histogram (device)\n"
           "  prob <qubit>                  probability of measuring 1\n"
           "  sep [all]                     per-qubit purity; 'all' adds bipartitions\n"
           "  clone-exact <src> <dst>       copy a register prepared in a known basis\n"
           "  clone-approx <q> [copy anc]   universal copy; defaults to the last two other qubits\n"
           "  tomo <qubits> [shots] [exact] reconstruct a reduced density matrix\n"
           "  assert <directive>            evaluate an assertion now\n"
           "  mode <omniscient|device>      switch inspection mode\n"
           "  shots <n>                     shot budget for device-mode queries\n"
           "  quit\n"
           "separate several commands on one line with ';'\n";
}

int Repl::exit_code() const {
    debug::Verdict v = debug::Verdict::Pass;
    for (const auto& r : session_.assertion_results()) v = debug::worst(v, r.verdict);
    for (const auto& r : manual_) v = debug::worst(v, r.verdict);
    return v == debug::Verdict::Pass ? kExitPass : kExitFail;
}

int Repl::run(std::istream& in, bool interactive) {
    std::string line;
    while (!quit_) {
        if (interactive) *ctx_.err << "(qdb) " << std::flush;
        if (!std::getline(in, line)) break;
        execute_line(line);
    }
    return exit_code();
}

bool Repl::execute_line(std::string_view line) {
    while (!quit_) {
        const auto semi = line.find(';');
        const auto command = line.substr(0, semi);
        const auto words = split_words(command);
        if (!words.empty()) {
            try {
                if (words[0] == "assert") {
                    cmd_assert(command.substr(command.find("assert") + 6));
                } else {
                    execute(words);
                }
            } catch (const std::exception& e) {
                if (ctx_.json()) {
                    ctx_.emit({{"verb", words[0]}, {"error", error_to_json(e)}});
                } else if (const auto* err = dynamic_cast<const Error*>(&e)) {
                    *ctx_.err << "error: " << error_code_name(err->code()) << ": " << e.what() << '\n';
                } else {
                    *ctx_.err << "error: " << e.what() << '\n';
                }
            }
            flush_trace();
        }
        if (semi == std::string_view::npos) break;
        line.remove_prefix(semi + 1);
    }
    return !quit_;
}

void Repl::execute(const std::vector<std::string>& words) {
    const std::string& verb = words[0];
    const std::vector<std::string> args(words.begin() + 1, words.end());
    if (verb == "step" || verb == "s") return cmd_step(args);
    if (verb == "continue" || verb == "c") return cmd_continue();
    if (verb == "break" || verb == "b") return cmd_break(args, false);
    if (verb == "delete") return cmd_break(args, true);
    if (verb == "where") return cmd_where();
    if (verb == "state") return cmd_state();
    if (verb == "prob") return cmd_prob(args);
    if (verb == "sep") return cmd_sep(args);
    if (verb == "clone-exact") return cmd_clone_exact(args);
    if (verb == "clone-approx") return cmd_clone_approx(args);
    if (verb == "tomo") return cmd_tomo(args);
    if (verb == "mode") return cmd_mode(args);
    if (verb == "shots") return cmd_shots(args);
    if (verb == "help") return reply("help", {{"text", help_text()}}, help_text());
    if (verb == "quit" || verb == "exit") {
        quit_ = true;
        return reply("quit", {{"exit_code", exit_code()}}, "");
    }
    throw UsageError("unknown command '" + verb + "'; type 'help' for a list");
}

void Repl::reply(const std::string& verb, const nlohmann::json& result, const std::string& text) {
    if (ctx_.json()) {
        ctx_.emit({{"verb", verb}, {"result", result}});
    } else {
        *ctx_.out << text << std::flush;
    }
}

void Repl::flush_trace() {
    if (!ctx_.trace) return;
    const auto& log = session_.event_log();
    for (; traced_ < log.size(); ++traced_) *ctx_.err << log[traced_].dump() << '\n';
}

void Repl::report_stop(const std::string& verb, const debug::StopEvent& ev) {
    std::string text;
    if (ev.reason == debug::StopReason::Finished) {
        text = "finished (" + std::to_string(ev.steps) + " steps)\n";
    } else {
        text = "paused before " + location(session_.ir(), ev.position) + " [" +
               std::string(debug::stop_reason_name(ev.reason)) + "]\n";
    }
    for (const auto& a : ev.assertions) text += describe(a);
    reply(verb, debug::to_json(ev), text);
}

void Repl::cmd_step(const std::vector<std::string>& args) {
    require_args(args, 0, 1, "step [n]");
    const std::uint64_t n = args.empty() ? 1 : parse_count(args[0], "step count");
    if (n == 0) throw UsageError("step count must be positive");
    if (session_.finished()) throw Error(ErrorCode::CursorExhausted, "program already finished");
    debug::StopEvent total;
    for (std::uint64_t i = 0; i < n && !session_.finished(); ++i) {
        auto ev = session_.step();
        total.reason = ev.reason;
        total.steps += ev.steps;
        total.assertions.insert(total.assertions.end(), ev.assertions.begin(), ev.assertions.end());
    }
    total.position = session_.position();
    report_stop("step", total);
}

void Repl::cmd_continue() {
    if (session_.finished()) throw Error(ErrorCode::CursorExhausted, "program already finished");
    report_stop("continue", session_.resume());
}

void Repl::cmd_break(const std::vector<std::string>& args, bool remove) {
    require_args(args, 1, 1, remove ? "delete <line>" : "break <line>");
    const auto line = parse_count(args[0], "line");
    std::size_t index = 0;
    if (remove) {
        const auto hits = session_.ir().instructions_at_line(line);
        if (hits.empty()) throw Error(ErrorCode::UnresolvableLocation, "line " + args[0] + " has no instruction");
        index = hits.front();
        session_.remove_breakpoint(index);
    } else {
        index = session_.add_breakpoint_at_line(line);
    }
    reply(remove ? "delete" : "break", {{"index", index}, {"line", line}, {"breakpoints", session_.breakpoints()}},
          std::string(remove ? "cleared" : "breakpoint at") + " #" + std::to_string(index) + " (line " +
              std::to_string(line) + ")\n");
}

void Repl::cmd_where() {
    std::string text = "at " + location(session_.ir(), session_.position()) + ", mode " +
                       std::string(debug::mode_name(session_.mode())) + "\n";
    for (auto b : session_.breakpoints()) text += "  breakpoint " + location(session_.ir(), b) + "\n";
    reply("where",
          {{"position", session_.position()},
           {"finished", session_.finished()},
           {"mode", debug::mode_name(session_.mode())},
           {"shot_budget", session_.shot_budget()},
           {"breakpoints", session_.breakpoints()}},
          text);
}

void Repl::cmd_state() {
    const auto in = session_.inspect();
    std::string text = "state at " + location(session_.ir(), in.position);
    if (!in.clbits.empty()) text += ", clbits " + in.clbits;
    if (in.state) {
        text += ", q0 leftmost\n" + format_state(*in.state);
    } else {
        text += ", device histogram over " + std::to_string(in.shots) + " shots\n" + format_counts(in.histogram);
    }
    reply("state", debug::to_json(in), text);
}

void Repl::cmd_prob(const std::vector<std::string>& args) {
    require_args(args, 1, 1, "prob <qubit>");
    const auto qubits = parse_qubits(args[0], session_.ir());
    if (qubits.size() != 1) throw UsageError("prob takes a single qubit");
    const double p = session_.probability_of_one(qubits[0]);
    reply("prob", {{"qubit", qubits[0]}, {"p1", p}, {"mode", debug::mode_name(session_.mode())}},
          "P(" + session_.ir().qubit_name(qubits[0]) + " = 1) = " + format_real(p) + "\n");
}

void Repl::cmd_sep(const std::vector<std::string>& args) {
    require_args(args, 0, 1, "sep [all]");
    if (!args.empty() && args[0] != "all") throw UsageError("usage: sep [all]");
    const auto report = session_.separability(!args.empty());
    std::ostringstream text;
    text << "separability (" << report.method << ", threshold " << format_real(report.threshold, 6) << ")\n";
    for (const auto& q : report.qubits) {
        text << "  " << session_.ir().qubit_name(q.qubit) << "  purity " << format_real(q.purity) << "  "
             << (q.entangled ? "entangled" : "separable") << '\n';
    }
    for (const auto& b : report.bipartitions) {
        text << "  {";
        for (std::size_t i = 0; i < b.part.size(); ++i) text << (i ? "," : "") << session_.ir().qubit_name(b.part[i]);
        text << "} | rest  purity " << format_real(b.purity) << "  " << (b.entangled ? "entangled" : "separable")
             << '\n';
    }
    reply("sep", debug::to_json(report), text.str());
}

void Repl::cmd_clone_exact(const std::vector<std::string>& args) {
    require_args(args, 2, 2, "clone-exact <src> <dst>");
    const auto source = parse_qubits(args[0], session_.ir());
    const auto blank = parse_qubits(args[1], session_.ir());
    session_.clone_exact(source, blank);
    reply("clone-exact", {{"source", source}, {"blank", blank}, {"position", session_.position()}},
          "cloned " + args[0] + " into " + args[1] + "\n");
}

void Repl::cmd_clone_approx(const std::vector<std::string>& args) {
    if (args.size() != 1 && args.size() != 3) throw UsageError("usage: clone-approx <q> [copy ancilla]");
    const auto& ir = session_.ir();
    const auto src = parse_qubits(args[0], ir);
    if (src.size() != 1) throw UsageError("clone-approx copies a single qubit");
    std::size_t copy = 0;
    std::size_t ancilla = 0;
    if (args.size() == 3) {
        const auto c = parse_qubits(args[1], ir);
        const auto a = parse_qubits(args[2], ir);
        if (c.size() != 1 || a.size() != 1) throw UsageError("copy and ancilla are single qubits");
        copy = c[0];
        ancilla = a[0];
    } else {
        std::vector<std::size_t> others;
        for (std::size_t q = ir.n_qubits; q-- > 0 && others.size() < 2;) {
            if (q != src[0]) others.push_back(q);
        }
        if (others.size() < 2) throw UsageError("clone-approx needs two spare qubits");
        copy = others[1];
        ancilla = others[0];
    }
    const auto report = session_.clone_approx(src[0], copy, ancilla);
    nlohmann::json j = debug::to_json(report);
    j["source"] = src[0];
    j["copy"] = copy;
    j["ancilla"] = ancilla;
    std::string text = "universal clone " + ir.qubit_name(src[0]) + " -> " + ir.qubit_name(copy) + " (ancilla " +
                       ir.qubit_name(ancilla) + ")\n";
    if (report.fidelity_source && report.fidelity_copy) {
        text += "  fidelity source " + format_real(*report.fidelity_source) + ", copy " +
                format_real(*report.fidelity_copy) + "\n";
    }
    reply("clone-approx", j, text);
}

void Repl::cmd_tomo(const std::vector<std::string>& args) {
    require_args(args, 1, 3, "tomo <qubits> [shots] [exact]");
    const auto qubits = parse_qubits(args[0], session_.ir());
    std::uint64_t shots = 10000;
    bool exact = false;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "exact") {
            exact = true;
        } else {
            shots = parse_count(args[i], "shots");
        }
    }
    if (shots == 0) throw UsageError("shots must be positive");
    const auto result = session_.tomography(qubits, shots, exact);
    std::string text = "tomography of " + args[0] + (exact ? " (exact)" : ", " + std::to_string(shots) +
                                                                               " shots per setting") + "\n";
    text += format_density(result.estimate);
    text += "  purity " + format_real(purity(result.estimate)) + "\n";
    if (result.fidelity) text += "  fidelity " + format_real(*result.fidelity) + "\n";
    reply("tomo", debug::to_json(result), text);
}

void Repl::cmd_mode(const std::vector<std::string>& args) {
    require_args(args, 1, 1, "mode <omniscient|device>");
    session_.set_mode(debug::parse_mode(args[0]));
    reply("mode", {{"mode", debug::mode_name(session_.mode())}},
          "mode " + std::string(debug::mode_name(session_.mode())) + "\n");
}

void Repl::cmd_shots(const std::vector<std::string>& args) {
    require_args(args, 1, 1, "shots <n>");
    session_.set_shot_budget(parse_count(args[0], "shots"));
    reply("shots", {{"shot_budget", session_.shot_budget()}},
          "shot budget " + std::to_string(session_.shot_budget()) + "\n");
}

void Repl::cmd_assert(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    if (text.empty()) throw UsageError("usage: assert <directive>");
    auto result = session_.evaluate(qasm::parse_directive(text, session_.ir()));
    manual_.push_back(result);
    reply("assert", debug::to_json(result), describe(result));
}

}  // namespace qdb::cli
