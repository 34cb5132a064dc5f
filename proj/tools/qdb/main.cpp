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

#include <unistd.h>

#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "support.hpp"

namespace {

using namespace qdb::cli;

int dispatch(int argc, char** argv) {
    CLI::App app{"qdb: run, test and debug OpenQASM 2.0 programs on a simulator", "qdb"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", "qdb 0.1.0");

    Context ctx;
    ctx.out = &std::cout;
    ctx.err = &std::cerr;
    std::uint64_t seed = 0;
    std::string format = "text";
    std::vector<std::string> include_path;
    app.add_option("--seed", seed, "Seed for every random draw");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--include-path,-I", include_path, "Directory searched for include files (repeatable)");
    app.add_flag("--trace", ctx.trace, "Write NDJSON trace events to stderr");

    RunArgs run;
    auto* run_cmd = app.add_subcommand("run", "Execute a program and print counts");
    run_cmd->add_option("file", run.file, "OpenQASM 2.0 file")->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--shots", run.shots, "Number of shots");
    run_cmd->add_option("--engine", run.engine, "dense or naive")->check(CLI::IsMember({"dense", "naive"}));
    run_cmd->add_flag("--statevector", run.statevector, "Print the final state (single shot only)");
    run_cmd->add_option("--threads", run.threads, "Worker threads for multi-shot runs")->check(CLI::Range(1, 256));

    TestArgs test;
    auto* test_cmd = app.add_subcommand("test", "Run a YAML test suite");
    test_cmd->add_option("suite", test.suite, "Suite file")->required()->check(CLI::ExistingFile);

    DebugArgs dbg;
    std::string script;
    auto* debug_cmd = app.add_subcommand("debug", "Interactive debugger; commands are read from stdin");
    debug_cmd->add_option("file", dbg.file, "OpenQASM 2.0 file")->required()->check(CLI::ExistingFile);
    debug_cmd->add_option("--mode", dbg.mode, "omniscient or device")
        ->check(CLI::IsMember({"omniscient", "device", "device-faithful"}));
    debug_cmd->add_option("--shot-budget", dbg.shot_budget, "Shot budget for device-mode queries");
    debug_cmd->add_option("--engine", dbg.engine, "dense or naive")->check(CLI::IsMember({"dense", "naive"}));
    auto* script_opt = debug_cmd->add_option("--script,-e", script, "Run these ';'-separated commands and exit");

    VerifyArgs verify;
    std::uint64_t verify_shots = 0;
    auto* verify_cmd = app.add_subcommand("verify", "Compare engines on one program");
    verify_cmd->add_option("file", verify.file, "OpenQASM 2.0 file")->required()->check(CLI::ExistingFile);
    verify_cmd->add_option("--engines", verify.engines, "Comma-separated engine list")->delimiter(',');
    auto* verify_shots_opt = verify_cmd->add_option("--shots", verify_shots, "Shots per engine");
    verify_cmd->add_option("--alpha", verify.alpha, "Significance level");

    ShotsArgs shots;
    auto* shots_cmd = app.add_subcommand("shots", "Shots needed to estimate a probability");
    shots_cmd->add_option("--epsilon", shots.epsilon, "Additive error")->required();
    shots_cmd->add_option("--delta", shots.delta, "Failure probability")->required();

    ValidateFactorsArgs factors;
    auto* factors_cmd = app.add_subcommand("validate-factors", "Check a claimed factorization");
    factors_cmd->add_option("n", factors.n, "The composite number")->required();
    factors_cmd->add_option("--factors", factors.factors, "Comma-separated factors")->required()->delimiter(',');

    TomoArgs tomo;
    std::size_t tomo_line = 0;
    auto* tomo_cmd = app.add_subcommand("tomo", "State tomography on a subset of qubits");
    tomo_cmd->add_option("file", tomo.file, "OpenQASM 2.0 file")->required()->check(CLI::ExistingFile);
    tomo_cmd->add_option("--qubits", tomo.qubits, "Qubits, e.g. 0,1 or q[0],q[1]")->required();
    tomo_cmd->add_option("--shots", tomo.shots, "Shots per measurement setting");
    auto* tomo_line_opt = tomo_cmd->add_option("--line", tomo_line, "Reconstruct the state before this line");
    tomo_cmd->add_option("--mode", tomo.mode, "omniscient or device")
        ->check(CLI::IsMember({"omniscient", "device", "device-faithful"}));
    tomo_cmd->add_flag("--exact", tomo.exact, "Use exact expectation values");

    ServeArgs serve;
    std::uint16_t port = 0;
    auto* serve_cmd = app.add_subcommand("serve", "Serve the session protocol");
    auto* stdio_opt = serve_cmd->add_flag("--stdio", serve.stdio, "NDJSON over stdin/stdout");
    auto* port_opt = serve_cmd->add_option("--port", port, "TCP port (0 picks a free one)");
    serve_cmd->add_option("--host", serve.host, "Address to bind");
    serve_cmd->add_option("--heartbeat-ms", serve.heartbeat_ms, "Heartbeat interval while running");
    stdio_opt->excludes(port_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    ctx.format = format == "json" ? Format::Json : Format::Text;
    if (app.count("--seed")) ctx.seed = seed;
    for (const auto& p : include_path) ctx.include_path.emplace_back(p);
    if (ctx.include_path.empty()) ctx.include_path = include_path_from_env();

    try {
        if (*run_cmd) return cmd_run(ctx, run);
        if (*test_cmd) return cmd_test(ctx, test);
        if (*debug_cmd) {
            if (*script_opt) dbg.script = script;
            return cmd_debug(ctx, dbg, std::cin, ::isatty(STDIN_FILENO) != 0);
        }
        if (*verify_cmd) {
            if (*verify_shots_opt) verify.shots = verify_shots;
            return cmd_verify(ctx, verify);
        }
        if (*shots_cmd) return cmd_shots(ctx, shots);
        if (*factors_cmd) return cmd_validate_factors(ctx, factors);
        if (*tomo_cmd) {
            if (*tomo_line_opt) tomo.line = tomo_line;
            return cmd_tomo(ctx, tomo);
        }
        if (*serve_cmd) {
            if (*port_opt) serve.port = port;
            return cmd_serve(ctx, serve);
        }
    } catch (const std::exception& e) {
        return report_error(ctx, e);
    }
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);
    return dispatch(argc, argv);
}
