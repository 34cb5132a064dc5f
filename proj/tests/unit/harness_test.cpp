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

#include <cmath>
#include <fstream>
#include <random>

#include <boost/multiprecision/cpp_int.hpp>
#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qdb/errors.hpp"
#include "qdb/harness/cross_engine.hpp"
#include "qdb/harness/stats.hpp"
#include "qdb/harness/suite.hpp"
#include "qdb/harness/validation.hpp"
#include "qdb/sim/backend.hpp"

namespace qdb::harness {
namespace {

using testing::load_data;

template <typename F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no exception";
    return ErrorCode::ProtocolViolation;
}

sim::EngineConfig config(sim::Method method, std::uint64_t seed) {
    sim::EngineConfig c;
    c.method = method;
    c.seed = seed;
    return c;
}

// --- Chernoff ----------------------------------------------------------------------

TEST(Chernoff, Examples) {
    EXPECT_EQ(chernoff_shots(0.05, 0.01).shots, 1060u);
    EXPECT_EQ(chernoff_shots(0.5, 0.5).shots, 3u);
    EXPECT_EQ(code_of([] { chernoff_shots(0.0, 0.01); }), ErrorCode::OutOfRange);
    EXPECT_EQ(code_of([] { chernoff_shots(0.1, 1.0); }), ErrorCode::OutOfRange);
    EXPECT_EQ(code_of([] { chernoff_shots(-0.1, 0.5); }), ErrorCode::OutOfRange);
    EXPECT_EQ(code_of([] { chernoff_shots(std::nan(""), 0.5); }), ErrorCode::OutOfRange);
}

TEST(Chernoff, MatchesClosedForm) {
    for (double eps : {0.01, 0.02, 0.05, 0.1, 0.3}) {
        for (double delta : {0.001, 0.01, 0.05, 0.2}) {
            const double raw = std::log(2.0 / delta) / (2.0 * eps * eps);
            const auto shots = chernoff_shots(eps, delta).shots;
            EXPECT_GE(static_cast<double>(shots), raw - 1e-9);
            EXPECT_LT(static_cast<double>(shots), raw + 1.0);
        }
    }
}

TEST(Chernoff, Monotone) {
    std::uint64_t prev_eps = UINT64_MAX;
    for (double eps = 0.01; eps < 0.99; eps += 0.01) {
        const auto s = chernoff_shots(eps, 0.01).shots;
        EXPECT_LE(s, prev_eps);
        prev_eps = s;
    }
    std::uint64_t prev_delta = UINT64_MAX;
    for (double delta = 0.001; delta < 0.99; delta += 0.007) {
        const auto s = chernoff_shots(0.05, delta).shots;
        EXPECT_LE(s, prev_delta);
        prev_delta = s;
    }
}

// --- distributions -----------------------------------------------------------------

TEST(Distribution, Fig4CountsAreFair) {
    const auto run = sim::execute(load_data("fig4.qasm"), config(sim::Method::DenseInplace, 7), 10000);
    const auto v = compare_distributions(run.counts, {{"0", 0.5}, {"1", 0.5}});
    EXPECT_TRUE(v.pass);
    EXPECT_GE(v.p_value, 0.01);
    EXPECT_EQ(v.shots, 10000u);
}

TEST(Distribution, AllZerosAgainstUniformFails) {
    const auto v = compare_distributions({{"0", 1000}}, {{"0", 0.5}, {"1", 0.5}});
    EXPECT_FALSE(v.pass);
    EXPECT_NEAR(v.tvd, 0.5, 1e-12);
    EXPECT_NEAR(v.chi_square, 1000.0, 1e-9);
}

TEST(Distribution, Fig6Marginals) {
    const auto run = sim::execute(load_data("fig6.qasm"), config(sim::Method::DenseInplace, 3), 1060);
    EXPECT_TRUE(compare_distributions(run.counts, {{"00", 0.5}, {"11", 0.5}}).pass);
}

TEST(Distribution, Errors) {
    EXPECT_EQ(code_of([] { compare_distributions({}, {{"0", 1.0}}); }), ErrorCode::EmptyObservation);
    EXPECT_EQ(code_of([] { compare_distributions({{"0", 0}}, {{"0", 1.0}}); }), ErrorCode::EmptyObservation);
    EXPECT_EQ(code_of([] { compare_distributions({{"0", 5}}, {{"0", 0.7}}); }), ErrorCode::OutOfRange);
}

TEST(Distribution, ImpossibleOutcomeFails) {
    const auto v = compare_distributions({{"0", 500}, {"1", 499}, {"2", 1}}, {{"0", 0.5}, {"1", 0.5}});
    EXPECT_FALSE(v.pass);
    EXPECT_EQ(v.p_value, 0.0);
}

TEST(Distribution, ChiSquareTail) {
    // Known quantiles of the chi-square distribution.
    EXPECT_NEAR(chi_square_sf(3.841458820694124, 1), 0.05, 1e-9);
    EXPECT_NEAR(chi_square_sf(6.634896601021214, 1), 0.01, 1e-9);
    // dof 2 has survival function exp(-x/2).
    for (double x : {0.5, 2.0, 9.0}) EXPECT_NEAR(chi_square_sf(x, 2), std::exp(-x / 2), 1e-12);
    EXPECT_EQ(chi_square_sf(0.0, 3), 1.0);
}

TEST(Distribution, TotalVariation) {
    EXPECT_NEAR(total_variation({{"a", 0.5}, {"b", 0.5}}, {{"a", 1.0}}), 0.5, 1e-15);
    EXPECT_NEAR(total_variation({{"a", 1.0}}, {{"b", 1.0}}), 1.0, 1e-15);
    const auto n = normalize_counts({{"x", 1}, {"y", 3}});
    EXPECT_DOUBLE_EQ(n.at("y"), 0.75);
}

std::string draw(const std::vector<std::pair<std::string, double>>& dist, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double x = u(rng);
    for (const auto& [k, p] : dist) {
        if (x < p) return k;
        x -= p;
    }
    return dist.back().first;
}

TEST(Distribution, SelfComparisonPassesAtLeast98Percent) {
    const std::vector<std::vector<std::pair<std::string, double>>> cases = {
        {{"0", 0.5}, {"1", 0.5}},
        {{"00", 0.25}, {"01", 0.25}, {"10", 0.25}, {"11", 0.25}},
        {{"a", 0.7}, {"b", 0.2}, {"c", 0.097}, {"d", 0.003}},
        {{"000", 0.4}, {"001", 0.3}, {"010", 0.15}, {"011", 0.1}, {"100", 0.04}, {"101", 0.01}},
    };
    const auto shots = chernoff_shots(0.05, 0.01).shots;
    for (const auto& dist : cases) {
        Distribution expected(dist.begin(), dist.end());
        int passes = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            std::mt19937_64 rng(seed);
            Counts counts;
            for (std::uint64_t i = 0; i < shots; ++i) ++counts[draw(dist, rng)];
            passes += compare_distributions(counts, expected).pass;
        }
        EXPECT_GE(passes, 98) << dist.size() << " outcomes";
    }
}

TEST(Distribution, TwoSample) {
    const Counts a = {{"0", 520}, {"1", 480}};
    EXPECT_TRUE(compare_samples(a, a).pass);
    EXPECT_NEAR(compare_samples(a, a).p_value, 1.0, 1e-12);
    const Counts b = {{"0", 900}, {"1", 100}};
    EXPECT_FALSE(compare_samples(a, b).pass);
    const Counts c = {{"0", 1040}, {"1", 960}};
    EXPECT_TRUE(compare_samples(a, c).pass);
    EXPECT_NEAR(compare_samples(a, c).tvd, 0.0, 1e-12);
}

// --- validation --------------------------------------------------------------------

TEST(Shor, Examples) {
    EXPECT_TRUE(validate_shor_factors(15, {3, 5}).valid);
    const auto wrong = validate_shor_factors(15, {2, 7});
    EXPECT_FALSE(wrong.valid);
    EXPECT_EQ(wrong.witness, "product 14 ≠ 15");
    const auto trivial = validate_shor_factors(15, {1, 15});
    EXPECT_FALSE(trivial.valid);
    EXPECT_EQ(trivial.witness, "factor 1 not strictly between 1 and N");
    EXPECT_FALSE(validate_shor_factors("15", {"3", "x"}).valid);
    EXPECT_FALSE(validate_shor_factors("15", {}).valid);
}

TEST(Shor, ExhaustiveAgainstFactorizationOracle) {
    for (std::uint64_t n = 2; n <= 1000; ++n) {
        for (const auto& f : testing::factorizations(n)) {
            const bool trivial = f.size() == 1;
            ASSERT_EQ(validate_shor_factors(n, f).valid, !trivial) << n;
            auto bumped = f;
            bumped.back() += 1;
            ASSERT_FALSE(validate_shor_factors(n, bumped).valid) << n;
            if (!trivial) {
                auto padded = f;
                padded.push_back(1);
                ASSERT_FALSE(validate_shor_factors(n, padded).valid) << n;
            }
        }
    }
}

TEST(Shor, RsaScaleNumbers) {
    using boost::multiprecision::cpp_int;
    const cpp_int p = (cpp_int(1) << 1023) + 1155;
    const cpp_int q = (cpp_int(1) << 1024) - 3;
    const cpp_int n = p * q;
    EXPECT_GE(msb(n), 2046u);
    EXPECT_TRUE(validate_shor_factors(n.str(), {p.str(), q.str()}).valid);
    const auto off = validate_shor_factors(cpp_int(n + 2).str(), {p.str(), q.str()});
    EXPECT_FALSE(off.valid);
    EXPECT_NE(off.witness.find("≠"), std::string::npos);
}

TEST(Grover, Examples) {
    std::vector<int> items = {4, 8, 15, 16, 23, 42, 99, 7, 0, 1};
    int calls = 0;
    auto marked = [&](int v) {
        ++calls;
        return v == 7;
    };
    EXPECT_TRUE(validate_grover(items, 7, marked).valid);
    EXPECT_EQ(calls, 1);
    calls = 0;
    const auto no = validate_grover(items, 3, marked);
    EXPECT_FALSE(no.valid);
    EXPECT_FALSE(no.witness.empty());
    EXPECT_EQ(calls, 1);
    calls = 0;
    EXPECT_EQ(code_of([&] { validate_grover(items, 10, marked); }), ErrorCode::IndexOutOfRange);
    EXPECT_EQ(calls, 0);
}

// --- cross-engine ------------------------------------------------------------------

class SwappedCxBackend : public sim::NaiveBackend {
 public:
    void apply_cx(std::size_t control, std::size_t target) override { NaiveBackend::apply_cx(target, control); }
};

TEST(CrossEngine, Fig4DenseVsNaive) {
    const auto r = cross_engine_verify(load_data("fig4.qasm"),
                                       {config(sim::Method::DenseInplace, 5), config(sim::Method::NaiveMatrix, 5)}, 2000);
    EXPECT_TRUE(r.pass);
    ASSERT_EQ(r.pairs.size(), 1u);
    EXPECT_TRUE(r.pairs[0].identical_counts);
    EXPECT_EQ(r.runs[0].counts, r.runs[1].counts);
}

TEST(CrossEngine, Fig5StatesMatch) {
    const auto r = cross_engine_verify(load_data("fig5.qasm"),
                                       {config(sim::Method::DenseInplace, 1), config(sim::Method::NaiveMatrix, 1)}, 100);
    EXPECT_TRUE(r.pass);
    ASSERT_TRUE(r.pairs[0].states_match);
    EXPECT_TRUE(*r.pairs[0].states_match);
}

TEST(CrossEngine, FaultyEngineFailsWithWitness) {
    const auto ir = qasm::load_circuit(
        "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\ncreg c[2];\nh q[0];\ncx q[0], q[1];\nmeasure q -> c;\n");
    auto faulty = config(sim::Method::NaiveMatrix, 9);
    faulty.backend_factory = [] { return std::make_unique<SwappedCxBackend>(); };
    faulty.backend_label = "swapped-cx";
    const auto r = cross_engine_verify(ir, {config(sim::Method::DenseInplace, 9), faulty}, 1060);
    EXPECT_FALSE(r.pass);
    EXPECT_FALSE(r.pairs[0].pass);
    EXPECT_NE(r.witness.find("swapped-cx"), std::string::npos) << r.witness;
    EXPECT_EQ(to_json(r)["verdict"], "fail");
}

TEST(CrossEngine, ReflexivePass) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto ir = qasm::load_circuit(testing::random_circuit(1 + seed % 5, 12, 300 + seed, true));
        for (auto m : {sim::Method::DenseInplace, sim::Method::NaiveMatrix}) {
            const auto r = cross_engine_verify(ir, {config(m, seed), config(m, seed)}, 300);
            ASSERT_TRUE(r.pass) << seed;
            ASSERT_TRUE(r.pairs[0].identical_counts);
        }
    }
}

TEST(CrossEngine, NeedsTwoConfigs) {
    EXPECT_EQ(code_of([] { cross_engine_verify(load_data("fig4.qasm"), {sim::EngineConfig{}}, 10); }),
              ErrorCode::OutOfRange);
}

// --- suites ------------------------------------------------------------------------

std::filesystem::path suite_path(const std::string& name) { return testing::data_dir() / "suites" / name; }

TEST(Suite, FiguresSuitePasses) {
    const auto suite = load_suite(suite_path("figures.yaml"));
    ASSERT_EQ(suite.cases.size(), 4u);
    const auto report = run_suite(suite);
    for (const auto& c : report.cases) {
        EXPECT_EQ(c.verdict, debug::Verdict::Pass) << c.name << " " << c.error.value_or("");
        for (const auto& check : c.checks) EXPECT_EQ(check.verdict, debug::Verdict::Pass) << c.name << " " << check.message;
    }
    EXPECT_EQ(report.verdict, debug::Verdict::Pass);
    EXPECT_EQ(exit_status(report.verdict), 0);
    EXPECT_EQ(report.cases[0].checks.size(), 1u);
    EXPECT_EQ(report.cases[0].shots, 10000u);
    EXPECT_EQ(report.cases[1].shots, 1060u);
    EXPECT_EQ(report.cases[2].checks.size(), 3u);
}

TEST(Suite, SingleFig4CaseReport) {
    auto suite = load_suite(suite_path("figures.yaml"));
    suite.cases.resize(1);
    const auto j = to_json(run_suite(suite));
    EXPECT_EQ(j["verdict"], "pass");
    EXPECT_EQ(j["summary"]["pass"], 1);
    const auto& c = j["cases"][0];
    EXPECT_EQ(c["seed"], 42);
    EXPECT_EQ(c["shots"], 10000);
    EXPECT_TRUE(c["checks"][0]["p_value"].is_number());
}

TEST(Suite, MixedSuiteFailsButKeepsDetail) {
    const auto report = run_suite(load_suite(suite_path("mixed.yaml")));
    ASSERT_EQ(report.cases.size(), 3u);
    EXPECT_EQ(report.cases[0].verdict, debug::Verdict::Pass);
    EXPECT_EQ(report.cases[1].verdict, debug::Verdict::Fail);
    EXPECT_EQ(report.cases[2].verdict, debug::Verdict::Fail);
    EXPECT_EQ(report.cases[2].checks[0].message, "product 14 ≠ 15");
    EXPECT_EQ(report.verdict, debug::Verdict::Fail);
    EXPECT_EQ(exit_status(report.verdict), 1);
    EXPECT_EQ(to_json(report)["summary"]["fail"], 2);
}

TEST(Suite, SeedOverrideIsReproducible) {
    const auto suite = load_suite(suite_path("figures.yaml"));
    SuiteRunOptions opts;
    opts.seed = 1234;
    EXPECT_EQ(to_json(run_suite(suite, opts)).dump(), to_json(run_suite(suite, opts)).dump());
    EXPECT_EQ(run_suite(suite, opts).cases[0].seed, 1234u);
}

TEST(Suite, MissingProgramIsAParseError) {
    try {
        load_suite(suite_path("missing.yaml"));
        FAIL();
    } catch (const SourceError& e) {
        EXPECT_EQ(e.code(), ErrorCode::SuiteParseError);
        EXPECT_EQ(e.span().line, 4u);
        EXPECT_NE(std::string(e.what()).find("does_not_exist.qasm"), std::string::npos);
    }
}

TEST(Suite, ParseErrorsCarryLocations) {
    const auto base = testing::data_dir() / "suites" / "inline.yaml";
    struct Bad {
        const char* text;
        std::size_t line;
    };
    const Bad bad[] = {
        {"name: x\ncases:\n  - name: a\n    program: ../fig4.qasm\n    colour: red\n", 5},
        {"name: x\ncases: [\n", 3},
        {"name: x\ncases:\n  - name: a\n    program: ../fig4.qasm\n    shots: many\n", 5},
        {"name: x\ncases:\n  - name: a\n    program: ../fig4.qasm\n    expect:\n      distribution: {\"0\": 0.4}\n", 6},
        {"name: x\ncases:\n  - name: a\n    program: ../fig4.qasm\n    engines: [quantum]\n", 5},
        {"name: x\ncases:\n  - name: a\n", 3},
        {"name: x\n", 1},
    };
    for (const auto& b : bad) {
        try {
            parse_suite(b.text, base);
            ADD_FAILURE() << b.text;
        } catch (const SourceError& e) {
            EXPECT_EQ(e.code(), ErrorCode::SuiteParseError) << b.text;
            EXPECT_EQ(e.span().line, b.line) << b.text << "\n" << e.what();
        }
    }
}

TEST(Suite, ProgramErrorsBecomeFailedCases) {
    const auto dir = std::filesystem::temp_directory_path() / "qdb_suite_test";
    std::filesystem::create_directories(dir);
    {
        std::ofstream(dir / "broken.qasm") << "OPENQASM 2.0;\nqreg q[1;\n";
    }
    const auto suite = parse_suite("cases:\n  - name: broken\n    program: broken.qasm\n", dir / "s.yaml");
    const auto report = run_suite(suite);
    EXPECT_EQ(report.verdict, debug::Verdict::Fail);
    ASSERT_TRUE(report.cases[0].error);
    EXPECT_NE(report.cases[0].error->find("ParseError"), std::string::npos);
    std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace qdb::harness
