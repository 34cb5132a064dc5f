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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qdb/debug/session.hpp"
#include "qdb/sim/backend.hpp"

namespace qdb::harness {

/// Expected outcome distribution over one classical register (or all clbits).
struct Expectation {
    std::optional<std::string> creg;
    std::map<std::string, double> distribution;
    double alpha = 0.01;
    double tolerance = 0.05;
};

struct ShorCheck {
    std::string n;
    std::vector<std::string> factors;
};

struct GroverCheck {
    std::vector<std::string> items;
    std::size_t index = 0;
    std::string marked;
};

struct SuiteCase {
    std::string name;
    std::filesystem::path program;
    /// Defaults to chernoff_shots(tolerance, 0.01).
    std::optional<std::uint64_t> shots;
    std::uint64_t seed = 0;
    std::vector<sim::Method> engines{sim::Method::DenseInplace};
    debug::Mode mode = debug::Mode::Omniscient;
    bool directives = false;
    std::optional<Expectation> expect;
    std::vector<ShorCheck> shor;
    std::vector<GroverCheck> grover;
    std::size_t line = 0;
};

struct Suite {
    std::string name;
    std::filesystem::path file;
    std::vector<SuiteCase> cases;
};

/// Reads a YAML suite. Program paths resolve against the suite's directory
/// and must exist. Throws SourceError(SuiteParseError) with the location of
/// the offending node.
Suite load_suite(const std::filesystem::path& path);
Suite parse_suite(const std::string& text, const std::filesystem::path& file = "suite.yaml");

struct CheckResult {
    /// "distribution", "cross-engine", "assertion", "shor" or "grover".
    std::string kind;
    debug::Verdict verdict = debug::Verdict::Pass;
    std::optional<double> p_value;
    std::uint64_t shots = 0;
    nlohmann::json detail = nlohmann::json::object();
    std::string message;
};

struct CaseReport {
    std::string name;
    std::string program;
    debug::Verdict verdict = debug::Verdict::Pass;
    std::uint64_t seed = 0;
    std::uint64_t shots = 0;
    std::vector<std::string> engines;
    std::vector<CheckResult> checks;
    /// Set when the program could not be loaded or run.
    std::optional<std::string> error;
};

struct SuiteReport {
    std::string name;
    debug::Verdict verdict = debug::Verdict::Pass;
    std::vector<CaseReport> cases;
};

struct SuiteRunOptions {
    std::vector<std::filesystem::path> include_path;
    /// Replaces every case seed when set.
    std::optional<std::uint64_t> seed;
};

CaseReport run_case(const SuiteCase& c, const SuiteRunOptions& options = {});
SuiteReport run_suite(const Suite& suite, const SuiteRunOptions& options = {});

nlohmann::json to_json(const CheckResult& r);
nlohmann::json to_json(const CaseReport& r);
nlohmann::json to_json(const SuiteReport& r);

/// 0 when every case passed, 1 otherwise.
int exit_status(debug::Verdict worst);

}  // namespace qdb::harness
