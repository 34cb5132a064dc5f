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


#include "qdb/harness/suite.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "qdb/errors.hpp"
#include "qdb/harness/cross_engine.hpp"
#include "qdb/harness/stats.hpp"
#include "qdb/harness/validation.hpp"
#include "qdb/sim/engine.hpp"

namespace qdb::harness {

namespace {

class SuiteReader {
 public:
    explicit SuiteReader(std::filesystem::path file) : file_(std::move(file)) {}

    [[noreturn]] void fail(const YAML::Mark& mark, const std::string& message) const {
        Span span;
        if (!mark.is_null()) {
            span.line = static_cast<std::size_t>(mark.line) + 1;
            span.column = static_cast<std::size_t>(mark.column) + 1;
            span.begin = span.end = static_cast<std::size_t>(mark.pos);
        }
        throw SourceError(ErrorCode::SuiteParseError, message, file_.string(), span);
    }

    template <typename T>
    T scalar(const YAML::Node& node, const std::string& what) const {
        if (!node.IsScalar()) fail(node.Mark(), what + " must be a scalar");
        try {
            return node.as<T>();
        } catch (const YAML::BadConversion&) {
            fail(node.Mark(), what + " has the wrong type");
        }
    }

    void only_keys(const YAML::Node& map, std::initializer_list<const char*> keys, const std::string& where) const {
        if (!map.IsMap()) fail(map.Mark(), where + " must be a mapping");
        const std::set<std::string> allowed(keys.begin(), keys.end());
        for (const auto& kv : map) {
            const auto key = kv.first.as<std::string>();
            if (!allowed.count(key)) fail(kv.first.Mark(), "unknown key '" + key + "' in " + where);
        }
    }

    Suite read(const YAML::Node& root) const {
        only_keys(root, {"name", "cases"}, "suite");
        Suite suite;
        suite.file = file_;
        suite.name = root["name"] ? scalar<std::string>(root["name"], "name") : file_.stem().string();
        const YAML::Node cases = root["cases"];
        if (!cases || !cases.IsSequence() || cases.size() == 0) fail(root.Mark(), "suite needs a non-empty 'cases' list");
        std::set<std::string> names;
        for (const auto& node : cases) {
            SuiteCase c = read_case(node);
            if (!names.insert(c.name).second) fail(node.Mark(), "duplicate case name '" + c.name + "'");
            suite.cases.push_back(std::move(c));
        }
        return suite;
    }

 private:
    SuiteCase read_case(const YAML::Node& node) const {
        only_keys(node, {"name", "program", "shots", "seed", "engines", "mode", "directives", "expect", "validators"},
                  "case");
        SuiteCase c;
        c.line = static_cast<std::size_t>(node.Mark().line) + 1;
        if (!node["name"]) fail(node.Mark(), "case needs a 'name'");
        c.name = scalar<std::string>(node["name"], "name");
        if (!node["program"]) fail(node.Mark(), "case '" + c.name + "' needs a 'program'");
        const auto program = scalar<std::string>(node["program"], "program");
        c.program = file_.parent_path() / program;
        if (!std::filesystem::is_regular_file(c.program)) {
            fail(node["program"].Mark(), "program file '" + program + "' not found");
        }
        if (node["shots"]) {
            const auto shots = scalar<long long>(node["shots"], "shots");
            if (shots <= 0) fail(node["shots"].Mark(), "shots must be positive");
            c.shots = static_cast<std::uint64_t>(shots);
        }
        if (node["seed"]) c.seed = scalar<std::uint64_t>(node["seed"], "seed");
        if (const auto engines = node["engines"]) {
            if (!engines.IsSequence() || engines.size() == 0) fail(engines.Mark(), "engines must be a non-empty list");
            c.engines.clear();
            for (const auto& e : engines) {
                try {
                    c.engines.push_back(sim::parse_method(scalar<std::string>(e, "engine")));
                } catch (const Error& err) {
                    fail(e.Mark(), err.what());
                }
            }
        }
        if (node["mode"]) {
            try {
                c.mode = debug::parse_mode(scalar<std::string>(node["mode"], "mode"));
            } catch (const Error& err) {
                fail(node["mode"].Mark(), err.what());
            }
        }
        if (node["directives"]) c.directives = scalar<bool>(node["directives"], "directives");
        if (node["expect"]) c.expect = read_expect(node["expect"]);
        if (const auto validators = node["validators"]) {
            if (!validators.IsSequence()) fail(validators.Mark(), "validators must be a list");
            for (const auto& v : validators) read_validator(v, c);
        }
        return c;
    }

    Expectation read_expect(const YAML::Node& node) const {
        only_keys(node, {"register", "distribution", "alpha", "tolerance"}, "expect");
        Expectation e;
        if (node["register"]) e.creg = scalar<std::string>(node["register"], "register");
        if (node["alpha"]) e.alpha = scalar<double>(node["alpha"], "alpha");
        if (node["tolerance"]) e.tolerance = scalar<double>(node["tolerance"], "tolerance");
        if (!(e.alpha > 0 && e.alpha < 1)) fail(node["alpha"].Mark(), "alpha must lie in (0, 1)");
        if (!(e.tolerance > 0 && e.tolerance < 1)) fail(node["tolerance"].Mark(), "tolerance must lie in (0, 1)");
        const YAML::Node dist = node["distribution"];
        if (!dist || !dist.IsMap() || dist.size() == 0) fail(node.Mark(), "expect needs a 'distribution' mapping");
        double total = 0.0;
        std::size_t width = 0;
        for (const auto& kv : dist) {
            const auto bits = scalar<std::string>(kv.first, "outcome");
            if (bits.empty() || bits.find_first_not_of("01") != std::string::npos) {
                fail(kv.first.Mark(), "outcome '" + bits + "' is not a bitstring");
            }
            if (width && bits.size() != width) fail(kv.first.Mark(), "outcomes have different lengths");
            width = bits.size();
            const auto p = scalar<double>(kv.second, "probability");
            if (p < 0 || p > 1) fail(kv.second.Mark(), "probability outside [0, 1]");
            e.distribution[bits] = p;
            total += p;
        }
        if (std::abs(total - 1.0) > 1e-9) fail(dist.Mark(), "probabilities sum to " + std::to_string(total));
        return e;
    }

    void read_validator(const YAML::Node& node, SuiteCase& c) const {
        only_keys(node, {"shor", "grover"}, "validator");
        if (node.size() != 1) fail(node.Mark(), "each validator names exactly one kind");
        if (const auto s = node["shor"]) {
            only_keys(s, {"n", "factors"}, "shor validator");
            if (!s["n"] || !s["factors"] || !s["factors"].IsSequence()) fail(s.Mark(), "shor needs 'n' and a 'factors' list");
            ShorCheck check{scalar<std::string>(s["n"], "n"), {}};
            for (const auto& f : s["factors"]) check.factors.push_back(scalar<std::string>(f, "factor"));
            c.shor.push_back(std::move(check));
        } else {
            const auto g = node["grover"];
            only_keys(g, {"items", "index", "marked"}, "grover validator");
            if (!g["items"] || !g["items"].IsSequence() || !g["index"] || !g["marked"]) {
                fail(g.Mark(), "grover needs 'items', 'index' and 'marked'");
            }
            GroverCheck check;
            for (const auto& item : g["items"]) check.items.push_back(scalar<std::string>(item, "item"));
            check.index = scalar<std::size_t>(g["index"], "index");
            check.marked = scalar<std::string>(g["marked"], "marked");
            c.grover.push_back(std::move(check));
        }
    }

    std::filesystem::path file_;
};

Counts restrict(const Counts& counts, std::size_t offset, std::size_t size) {
    Counts out;
    for (const auto& [bits, n] : counts) out[bits.substr(offset, size)] += n;
    return out;
}

sim::EngineConfig engine_config(sim::Method method, std::uint64_t seed) {
    sim::EngineConfig config;
    config.method = method;
    config.seed = seed;
    return config;
}

CheckResult distribution_check(const qasm::CircuitIR& ir, const Expectation& e, const sim::EngineConfig& config,
                               std::uint64_t shots) {
    std::size_t offset = 0, size = ir.n_clbits;
    if (e.creg) {
        const auto* reg = ir.find_creg(*e.creg);
        if (!reg) throw Error(ErrorCode::SemanticError, "program has no classical register '" + *e.creg + "'");
        offset = reg->offset;
        size = reg->size;
    }
    if (e.distribution.begin()->first.size() != size) {
        throw Error(ErrorCode::SemanticError, "expected outcomes have " +
                                                  std::to_string(e.distribution.begin()->first.size()) +
                                                  " bits, register has " + std::to_string(size));
    }
    const auto run = sim::execute(ir, config, shots);
    const Counts counts = restrict(run.counts, offset, size);
    const auto v = compare_distributions(counts, e.distribution, e.alpha);
    CheckResult r;
    r.kind = "distribution";
    r.shots = shots;
    r.p_value = v.p_value;
    r.detail = to_json(v);
    r.detail["counts"] = counts;
    r.detail["tolerance"] = e.tolerance;
    const bool tvd_ok = v.tvd <= e.tolerance;
    r.verdict = v.pass && tvd_ok ? debug::Verdict::Pass : debug::Verdict::Fail;
    if (!tvd_ok) {
        r.message = "total variation " + std::to_string(v.tvd) + " exceeds " + std::to_string(e.tolerance);
    } else if (!v.pass) {
        r.message = "chi-square p-value " + std::to_string(v.p_value) + " below " + std::to_string(e.alpha);
    }
    return r;
}

}  // namespace

Suite parse_suite(const std::string& text, const std::filesystem::path& file) {
    SuiteReader reader(file);
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        reader.fail(e.mark, e.msg);
    }
    return reader.read(root);
}

Suite load_suite(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SourceError(ErrorCode::SuiteParseError, "cannot open suite file", path.string(), Span{});
    std::ostringstream text;
    text << in.rdbuf();
    return parse_suite(text.str(), path);
}

CaseReport run_case(const SuiteCase& c, const SuiteRunOptions& options) {
    CaseReport report;
    report.name = c.name;
    report.program = c.program.string();
    report.seed = options.seed.value_or(c.seed);
    const double tolerance = c.expect ? c.expect->tolerance : 0.05;
    report.shots = c.shots.value_or(chernoff_shots(tolerance, 0.01).shots);
    for (auto m : c.engines) report.engines.emplace_back(sim::method_name(m));

    try {
        qasm::LoadOptions load;
        load.include_path = options.include_path;
        const auto ir = std::make_shared<const qasm::CircuitIR>(qasm::load_circuit_file(c.program, load));

        if (c.expect) report.checks.push_back(distribution_check(*ir, *c.expect, engine_config(c.engines.front(), report.seed), report.shots));

        if (c.engines.size() > 1) {
            std::vector<sim::EngineConfig> configs;
            for (auto m : c.engines) configs.push_back(engine_config(m, report.seed));
            const double alpha = c.expect ? c.expect->alpha : kDefaultAlpha;
            const auto x = cross_engine_verify(*ir, configs, report.shots, alpha);
            CheckResult r;
            r.kind = "cross-engine";
            r.shots = report.shots;
            r.verdict = x.pass ? debug::Verdict::Pass : debug::Verdict::Fail;
            double p = 1.0;
            for (const auto& pair : x.pairs) p = std::min(p, pair.counts.p_value);
            r.p_value = p;
            r.detail = to_json(x);
            r.detail.erase("runs");
            r.message = x.witness;
            report.checks.push_back(std::move(r));
        }

        if (c.directives) {
            debug::SessionOptions so;
            so.mode = c.mode;
            so.seed = report.seed;
            so.engine = engine_config(c.engines.front(), report.seed);
            debug::DebugSession session(ir, so);
            while (!session.finished()) session.resume();
            for (const auto& a : session.assertion_results()) {
                CheckResult r;
                r.kind = "assertion";
                r.verdict = a.verdict;
                r.p_value = a.p_value;
                r.shots = a.shots;
                r.detail = debug::to_json(a);
                r.message = a.message;
                report.checks.push_back(std::move(r));
            }
        }

        for (const auto& s : c.shor) {
            const auto v = validate_shor_factors(s.n, s.factors);
            CheckResult r;
            r.kind = "shor";
            r.verdict = v.valid ? debug::Verdict::Pass : debug::Verdict::Fail;
            r.detail = {{"n", s.n}, {"factors", s.factors}, {"outcome", to_json(v)}};
            r.message = v.witness;
            report.checks.push_back(std::move(r));
        }
        for (const auto& g : c.grover) {
            const auto v = validate_grover(g.items, g.index, [&](const std::string& item) { return item == g.marked; });
            CheckResult r;
            r.kind = "grover";
            r.verdict = v.valid ? debug::Verdict::Pass : debug::Verdict::Fail;
            r.detail = {{"index", g.index}, {"marked", g.marked}, {"outcome", to_json(v)}};
            r.message = v.witness;
            report.checks.push_back(std::move(r));
        }
    } catch (const SourceError& e) {
        report.error = std::string(error_code_name(e.code())) + " at " + e.file() + ":" + std::to_string(e.span().line) +
                       ":" + std::to_string(e.span().column) + ": " + e.what();
    } catch (const Error& e) {
        report.error = std::string(error_code_name(e.code())) + ": " + e.what();
    }

    report.verdict = report.error ? debug::Verdict::Fail : debug::Verdict::Pass;
    for (const auto& r : report.checks) report.verdict = debug::worst(report.verdict, r.verdict);
    return report;
}

SuiteReport run_suite(const Suite& suite, const SuiteRunOptions& options) {
    SuiteReport report;
    report.name = suite.name;
    for (const auto& c : suite.cases) {
        report.cases.push_back(run_case(c, options));
        report.verdict = debug::worst(report.verdict, report.cases.back().verdict);
    }
    return report;
}

nlohmann::json to_json(const CheckResult& r) {
    nlohmann::json j = {{"kind", r.kind}, {"verdict", debug::verdict_name(r.verdict)}, {"shots", r.shots},
                        {"detail", r.detail}};
    j["p_value"] = r.p_value ? nlohmann::json(*r.p_value) : nlohmann::json(nullptr);
    if (!r.message.empty()) j["message"] = r.message;
    return j;
}

nlohmann::json to_json(const CaseReport& r) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks) checks.push_back(to_json(c));
    nlohmann::json j = {{"name", r.name},   {"program", r.program}, {"verdict", debug::verdict_name(r.verdict)},
                        {"seed", r.seed},   {"shots", r.shots},     {"engines", r.engines},
                        {"checks", checks}};
    j["error"] = r.error ? nlohmann::json(*r.error) : nlohmann::json(nullptr);
    return j;
}

nlohmann::json to_json(const SuiteReport& r) {
    nlohmann::json cases = nlohmann::json::array();
    std::map<std::string, std::size_t> summary = {{"pass", 0}, {"fail", 0}, {"inconclusive", 0}};
    for (const auto& c : r.cases) {
        cases.push_back(to_json(c));
        ++summary[std::string(debug::verdict_name(c.verdict))];
    }
    return {{"suite", r.name}, {"verdict", debug::verdict_name(r.verdict)}, {"summary", summary}, {"cases", cases}};
}

int exit_status(debug::Verdict worst) { return worst == debug::Verdict::Pass ? 0 : 1; }

}  // namespace qdb::harness
