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
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "support.hpp"

namespace qdb::cli {

struct RunArgs {
    std::filesystem::path file;
    std::uint64_t shots = 1;
    std::string engine = "dense";
    bool statevector = false;
    std::size_t threads = 1;
};

struct TestArgs {
    std::filesystem::path suite;
};

struct DebugArgs {
    std::filesystem::path file;
    std::string mode = "omniscient";
    std::uint64_t shot_budget = 1060;
    std::string engine = "dense";
    std::optional<std::string> script;
};

struct VerifyArgs {
    std::filesystem::path file;
    std::vector<std::string> engines{"dense", "naive"};
    std::optional<std::uint64_t> shots;
    double alpha = 0.01;
};

struct ShotsArgs {
    double epsilon = 0.0;
    double delta = 0.0;
};

struct ValidateFactorsArgs {
    std::string n;
    std::vector<std::string> factors;
};

struct TomoArgs {
    std::filesystem::path file;
    std::string qubits;
    std::uint64_t shots = 10000;
    std::optional<std::size_t> line;
    std::string mode = "omniscient";
    bool exact = false;
};

struct ServeArgs {
    bool stdio = false;
    std::optional<std::uint16_t> port;
    std::string host = "127.0.0.1";
    std::uint64_t heartbeat_ms = 5000;
};

int cmd_run(const Context& ctx, const RunArgs& args);
int cmd_test(const Context& ctx, const TestArgs& args);
int cmd_debug(const Context& ctx, const DebugArgs& args, std::istream& in, bool interactive);
int cmd_verify(const Context& ctx, const VerifyArgs& args);
int cmd_shots(const Context& ctx, const ShotsArgs& args);
int cmd_validate_factors(const Context& ctx, const ValidateFactorsArgs& args);
int cmd_tomo(const Context& ctx, const TomoArgs& args);
int cmd_serve(const Context& ctx, const ServeArgs& args);

}  // namespace qdb::cli
