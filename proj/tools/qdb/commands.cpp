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

#include "commands.hpp"

#include <csignal>
#include <iostream>
#include <pthread.h>
#include <sstream>
#include <thread>

#include "qdb/debug/session.hpp"
#include "qdb/debug/tomography.hpp"
#include "qdb/errors.hpp"
#include "qdb/harness/cross_engine.hpp"
#include "qdb/harness/stats.hpp"
#include "qdb/harness/suite.hpp"
#include "qdb/harness/validation.hpp"
#include "qdb/service/server.hpp"
#include "repl.hpp"

namespace qdb::cli {

namespace {

sim::Method method_arg(const std::string& name) {
    try {
        return sim::parse_method(name);
    } catch (const Error&) {
        throw UsageError("unknown engine '" + name + "' (expected dense or naive)");
    }
}

debug::Mode mode_arg(const std::string& name) {
    try {
        return debug::parse_mode(name);
    } catch (const Error&) {
        throw UsageError("unknown mode '" + name + "' (expected omniscient or device)");
    }
}

std::string verdict_tag(debug::Verdict v) {
    switch (v) {
        case debug::Verdict::Pass: return "PASS";
        case debug::Verdict::Fail: return "FAIL";
        case debug::Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "FAIL";
}

}  // namespace

int cmd_run(const Context& ctx, const RunArgs& args) {
    if (args.statevector && args.shots != 1) throw UsageError("--statevector requires --shots 1");
    if (args.shots == 0) throw UsageError("--shots must be positive");
    const auto ir = load_program(ctx, args.file);
    sim::EngineConfig config;
    config.method = method_arg(args.engine);
    config.seed = ctx.seed_or(0);
    config.record_statevector = args.statevector;
    config.threads = args.threads;
    config.trace = trace_sink(ctx);
    const auto result = sim::execute(*ir, config, args.shots);

    // With --statevector the register is also shown just before the trailing
    // measurements, replaying the same random draws as the reported shot.
    std::optional<QuantumState> snapshot;
    std::size_t terminal = ir->instructions.size();
    if (args.statevector) {
        while (terminal > 0) {
            const auto& ins = ir->instructions[terminal - 1];
            if ((ins.kind != qasm::OpKind::Measure && ins.kind != qasm::OpKind::Barrier) || ins.condition) break;
            --terminal;
        }
        sim::EngineConfig replay = config;
        replay.trace = nullptr;
        sim::ExecutionCursor cursor(ir, replay);
        cursor.run_to(terminal);
        snapshot = cursor.state();
    }

    if (ctx.json()) {
        nlohmann::json j = sim::run_result_to_json(result);
        if (snapshot) j["statevector"] = {{"position", terminal}, {"state", sim::state_to_json(*snapshot)}};
        ctx.emit(j);
        return kExitPass;
    }
    auto& out = *ctx.out;
    out << "engine " << result.engine << ", seed " << result.seed << ", " << result.shots << " shot"
        << (result.shots == 1 ? "" : "s") << ", " << format_real(std::chrono::duration<double, std::milli>(result.elapsed).count(), 2)
        << " ms\n";
    if (ir->n_clbits) out << "counts (c[0] leftmost):\n" << format_counts(result.counts);
    if (snapshot && terminal < ir->instructions.size()) {
        out << "state before the final measurements (q0 leftmost):\n" << format_state(*snapshot);
    }
    if (result.final_state) out << "final state (q0 leftmost):\n" << format_state(*result.final_state);
    return kExitPass;
}

int cmd_test(const Context& ctx, const TestArgs& args) {
    const auto suite = harness::load_suite(args.suite);
    harness::SuiteRunOptions options;
    options.include_path = ctx.include_path;
    options.seed = ctx.seed;
    const auto report = harness::run_suite(suite, options);

    if (ctx.json()) {
        ctx.emit(harness::to_json(report));
        return harness::exit_status(report.verdict);
    }
    auto& out = *ctx.out;
    std::size_t counts[3] = {0, 0, 0};
    out << "suite " << report.name << '\n';
    for (const auto& c : report.cases) {
        ++counts[static_cast<int>(c.verdict)];
        out << "  " << verdict_tag(c.verdict) << "  " << c.name << "  (seed " << c.seed << ", " << c.shots
            << " shots)\n";
        if (c.error) out << "        error: " << *c.error << '\n';
        for (const auto& check : c.checks) {
            out << "        " << check.kind << ": " << debug::verdict_name(check.verdict);
            if (check.p_value) out << " p=" << format_real(*check.p_value);
            if (!check.message.empty()) out << "; " << check.message;
            out << '\n';
        }
    }
    out << counts[0] << " passed, " << counts[1] << " failed, " << counts[2] << " inconclusive\n"
        << verdict_tag(report.verdict) << '\n';
    return harness::exit_status(report.verdict);
}

int cmd_debug(const Context& ctx, const DebugArgs& args, std::istream& in, bool interactive) {
    const auto ir = load_program(ctx, args.file);
    debug::SessionOptions options;
    options.mode = mode_arg(args.mode);
    options.seed = ctx.seed_or(0);
    options.shot_budget = args.shot_budget;
    options.engine.method = method_arg(args.engine);
    if (options.shot_budget == 0) throw UsageError("--shot-budget must be positive");
    Repl repl(ctx, ir, options);
    if (args.script) {
        repl.execute_line(*args.script);
        return repl.exit_code();
    }
    if (interactive && !ctx.json()) {
        *ctx.err << "loaded " << args.file.string() << ": " << ir->n_qubits << " qubits, " << ir->instructions.size()
                 << " instructions; type 'help' for commands\n";
    }
    return repl.run(in, interactive);
}

int cmd_verify(const Context& ctx, const VerifyArgs& args) {
    if (args.engines.size() < 2) throw UsageError("--engines needs at least two engines");
    if (!(args.alpha > 0.0 && args.alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1)");
    const auto ir = load_program(ctx, args.file);
    std::vector<sim::EngineConfig> configs;
    for (const auto& name : args.engines) {
        sim::EngineConfig c;
        c.method = method_arg(name);
        c.seed = ctx.seed_or(0);
        configs.push_back(c);
    }
    const std::uint64_t shots = args.shots.value_or(harness::chernoff_shots(0.05, 0.01).shots);
    if (shots == 0) throw UsageError("--shots must be positive");
    const auto report = harness::cross_engine_verify(*ir, configs, shots, args.alpha);
    const int code = report.pass ? kExitPass : kExitFail;

    if (ctx.json()) {
        ctx.emit(harness::to_json(report));
        return code;
    }
    auto& out = *ctx.out;
    out << "cross-engine check, " << shots << " shots per engine, alpha " << args.alpha << '\n';
    for (const auto& p : report.pairs) {
        out << "  " << args.engines[p.first] << " vs " << args.engines[p.second] << ": p=" << format_real(p.counts.p_value)
            << " tvd=" << format_real(p.counts.tvd);
        if (p.states_match) out << ", final states " << (*p.states_match ? "match" : "differ");
        out << "  " << (p.pass ? "pass" : "fail") << '\n';
    }
    out << (report.pass ? "PASS" : "FAIL");
    if (!report.witness.empty()) out << ": " << report.witness;
    out << '\n';
    return code;
}

int cmd_shots(const Context& ctx, const ShotsArgs& args) {
    harness::RepetitionPlan plan;
    try {
        plan = harness::chernoff_shots(args.epsilon, args.delta);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    if (ctx.json()) {
        ctx.emit({{"epsilon", plan.epsilon}, {"delta", plan.delta}, {"shots", plan.shots}});
    } else {
        *ctx.out << plan.shots << '\n';
    }
    return kExitPass;
}

int cmd_validate_factors(const Context& ctx, const ValidateFactorsArgs& args) {
    const auto outcome = harness::validate_shor_factors(args.n, args.factors);
    if (ctx.json()) {
        nlohmann::json j = harness::to_json(outcome);
        j["n"] = args.n;
        j["factors"] = args.factors;
        ctx.emit(j);
    } else {
        *ctx.out << (outcome.valid ? "valid" : "invalid: " + outcome.witness) << '\n';
    }
    return outcome.valid ? kExitPass : kExitFail;
}

int cmd_tomo(const Context& ctx, const TomoArgs& args) {
    if (args.shots == 0) throw UsageError("--shots must be positive");
    const auto ir = load_program(ctx, args.file);
    const auto qubits = parse_qubits(args.qubits, *ir);
    debug::SessionOptions options;
    options.mode = mode_arg(args.mode);
    options.seed = ctx.seed_or(0);
    options.evaluate_assertions = false;
    debug::DebugSession session(ir, options);
    if (args.line) {
        std::size_t index = 0;
        try {
            index = session.add_breakpoint_at_line(*args.line);
        } catch (const Error& e) {
            throw UsageError(e.what());
        }
        while (session.position() != index && !session.finished()) session.resume();
    } else {
        while (!session.finished()) session.resume();
    }
    const auto result = session.tomography(qubits, args.shots, args.exact);

    if (ctx.json()) {
        ctx.emit(debug::to_json(result));
        return kExitPass;
    }
    auto& out = *ctx.out;
    out << "tomography of " << args.qubits << " at position " << session.position();
    if (args.exact) {
        out << " (exact)\n";
    } else {
        out << ", " << result.shots_per_setting << " shots x " << result.settings.size() << " settings\n";
    }
    out << format_density(result.estimate) << "  purity " << format_real(purity(result.estimate)) << '\n';
    if (result.fidelity) out << "  fidelity " << format_real(*result.fidelity) << '\n';
    return kExitPass;
}

int cmd_serve(const Context& ctx, const ServeArgs& args) {
    if (args.stdio == args.port.has_value()) throw UsageError("serve needs exactly one of --stdio or --port");
    service::HandlerOptions handler;
    handler.include_path = ctx.include_path;
    handler.heartbeat = std::chrono::milliseconds(args.heartbeat_ms);
    if (args.stdio) {
        service::serve_stdio(std::cin, *ctx.out, handler);
        return kExitPass;
    }

    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    service::TcpOptions options;
    options.host = args.host;
    options.port = *args.port;
    options.handler = handler;
    service::TcpServer server(options);
    if (ctx.json()) {
        ctx.emit({{"listening", {{"host", args.host}, {"port", server.port()}}}});
    } else {
        *ctx.err << "listening on " << args.host << ':' << server.port() << '\n';
    }
    ctx.out->flush();

    std::thread waiter([&] {
        int sig = 0;
        sigwait(&signals, &sig);
        server.stop();
    });
    server.run();
    waiter.join();
    return kExitPass;
}

}  // namespace qdb::cli
