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
#include <numbers>

#include <gtest/gtest.h>
#include <unsupported/Eigen/KroneckerProduct>

#include "oracles.hpp"
#include "qdb/errors.hpp"
#include "qdb/qasm/ir.hpp"
#include "qdb/sim/engine.hpp"
#include "qdb/sim/unitary.hpp"
#include "qdb/state/gates.hpp"

namespace qdb {
namespace {

using sim::EngineConfig;
using sim::Method;
using testing::load_data;

EngineConfig config(Method method, std::uint64_t seed = 0) {
    EngineConfig c;
    c.method = method;
    c.seed = seed;
    return c;
}

Eigen::VectorXcd as_vector(const QuantumState& s) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(s.dimension()));
    for (std::size_t i = 0; i < s.dimension(); ++i) v(static_cast<Eigen::Index>(i)) = s[i];
    return v;
}

qasm::CircuitIR prefix(const qasm::CircuitIR& ir, std::size_t n) {
    qasm::CircuitIR out = ir;
    out.instructions.resize(n);
    return out;
}

TEST(Execute, Fig4MeasuresZeroHalfTheTime) {
    const auto ir = load_data("fig4.qasm");
    const auto r = sim::execute(ir, config(Method::DenseInplace, 42), 10000);
    const double p0 = static_cast<double>(r.counts.at("0")) / 1e4;
    EXPECT_GE(p0, 0.48);
    EXPECT_LE(p0, 0.52);
    EXPECT_EQ(r.counts.at("0") + r.counts.at("1"), 10000u);
}

TEST(Execute, Fig6OnlyCorrelatedOutcomes) {
    const auto ir = load_data("fig6.qasm");
    const auto r = sim::execute(ir, config(Method::DenseInplace, 3), 2000);
    for (const auto& [bits, n] : r.counts) EXPECT_TRUE(bits == "00" || bits == "11") << bits;
    EXPECT_EQ(r.counts.size(), 2u);
}

TEST(Execute, EmptyCircuitMeasuresZeros) {
    const auto ir = qasm::load_circuit("OPENQASM 2.0;\nqreg q[2];\ncreg c[2];\nmeasure q[0] -> c[0];\nmeasure q[1] -> c[1];\n");
    const auto r = sim::execute(ir, config(Method::DenseInplace, 9), 500);
    ASSERT_EQ(r.counts.size(), 1u);
    EXPECT_EQ(r.counts.at("00"), 500u);
}

TEST(Execute, ClbitZeroIsLeftmost) {
    const auto ir = qasm::load_circuit("OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\ncreg c[2];\nx q[1];\nmeasure q -> c;\n");
    const auto r = sim::execute(ir, config(Method::DenseInplace), 10);
    EXPECT_EQ(r.counts.at("01"), 10u);
}

TEST(Execute, ConditionalUsesRegisterValue) {
    // c = 2 means c[1] = 1, c[0] = 0.
    const auto ir = qasm::load_circuit(
        "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[3];\ncreg c[2];\n"
        "x q[1];\nmeasure q[0] -> c[0];\nmeasure q[1] -> c[1];\n"
        "if(c==2) x q[2];\nif(c==1) x q[0];\n");
    const auto r = sim::execute(ir, [] { auto c = config(Method::DenseInplace); c.record_statevector = true; return c; }(), 1);
    ASSERT_TRUE(r.final_state);
    EXPECT_NEAR(std::norm((*r.final_state)[basis_index("011")]), 1.0, 1e-12);
}

TEST(Execute, ResetReturnsQubitToZero) {
    const auto ir = qasm::load_circuit(
        "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\ncreg c[2];\nh q[0];\nx q[1];\nreset q;\nmeasure q -> c;\n");
    for (Method m : {Method::DenseInplace, Method::NaiveMatrix}) {
        const auto r = sim::execute(ir, config(m, 5), 200);
        ASSERT_EQ(r.counts.size(), 1u);
        EXPECT_EQ(r.counts.at("00"), 200u);
    }
}

TEST(Execute, FinalStateOnlyForSingleShot) {
    const auto ir = load_data("fig6.qasm");
    auto c = config(Method::DenseInplace, 1);
    c.record_statevector = true;
    EXPECT_TRUE(sim::execute(ir, c, 1).final_state.has_value());
    EXPECT_FALSE(sim::execute(ir, c, 2).final_state.has_value());
}

TEST(Execute, CapacityExceeded) {
    const auto ir = qasm::load_circuit("OPENQASM 2.0;\nqreg q[11];\n");
    try {
        sim::execute(ir, config(Method::NaiveMatrix), 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::CapacityExceeded);
    }
    auto c = config(Method::DenseInplace);
    c.max_qubits = 2;
    EXPECT_THROW(sim::execute(load_data("fig4.qasm"), c, 1), Error);
    c.max_qubits = 3;
    EXPECT_NO_THROW(sim::execute(load_data("fig4.qasm"), c, 1));
}

class LeakyBackend : public sim::DenseBackend {
 public:
    void apply_u(const std::array<double, 3>& params, std::size_t target) override {
        DenseBackend::apply_u(params, target);
        for (auto& a : state_.amplitudes()) a *= 1.001;
    }
};

TEST(Execute, NormDriftIsKernelCorruption) {
    auto c = config(Method::DenseInplace);
    c.backend_factory = [] { return std::make_unique<LeakyBackend>(); };
    c.backend_label = "leaky";
    try {
        sim::execute(load_data("fig5.qasm"), c, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::KernelCorruption);
    }
}

TEST(Execute, IdenticalConfigsGiveIdenticalJson) {
    const auto ir = load_data("fig4.qasm");
    auto c = config(Method::DenseInplace, 77);
    c.record_per_shot = true;
    const auto a = sim::run_result_to_json(sim::execute(ir, c, 300), false).dump();
    const auto b = sim::run_result_to_json(sim::execute(ir, c, 300), false).dump();
    EXPECT_EQ(a, b);
}

TEST(Execute, ThreadCountDoesNotChangeResults) {
    const auto ir = load_data("fig6.qasm");
    auto c = config(Method::DenseInplace, 11);
    c.record_per_shot = true;
    const auto one = sim::execute(ir, c, 401);
    c.threads = 3;
    const auto three = sim::execute(ir, c, 401);
    EXPECT_EQ(one.counts, three.counts);
    EXPECT_EQ(one.per_shot, three.per_shot);
}

TEST(Execute, ShotIndependenceOverSeeds) {
    const auto ir = qasm::load_circuit("OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[1];\ncreg c[1];\nh q[0];\nmeasure q[0] -> c[0];\n");
    const double sigma = std::sqrt(10000 * 0.25);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto r = sim::execute(ir, config(Method::DenseInplace, seed), 10000);
        const double zeros = static_cast<double>(r.counts.count("0") ? r.counts.at("0") : 0);
        EXPECT_LE(std::abs(zeros - 5000.0), 4 * sigma) << "seed " << seed;
    }
}

TEST(Execute, TraceIndicesIncreaseWithinShot) {
    const auto ir = load_data("fig6.qasm");
    auto c = config(Method::DenseInplace, 2);
    std::vector<sim::TraceEvent> events;
    c.trace = [&](const sim::TraceEvent& e) { events.push_back(e); };
    sim::execute(ir, c, 3);
    ASSERT_EQ(events.size(), 3 * ir.instructions.size());
    for (std::size_t i = 1; i < events.size(); ++i) {
        if (events[i].shot == events[i - 1].shot) {
            EXPECT_GT(events[i].index, events[i - 1].index);
        }
    }
    for (const auto& e : events) EXPECT_NEAR(e.norm, 1.0, 1e-12);
}

TEST(Cursor, StartsInZeroState) {
    sim::ExecutionCursor cur(std::make_shared<qasm::CircuitIR>(load_data("fig6.qasm")), config(Method::DenseInplace));
    EXPECT_EQ(cur.position(), 0u);
    EXPECT_NEAR(std::norm(cur.state()[0]), 1.0, 1e-15);
}

TEST(Cursor, Fig6PrefixMatchesOracle) {
    const auto ir = load_data("fig6.qasm");
    sim::ExecutionCursor cur(std::make_shared<qasm::CircuitIR>(ir), config(Method::DenseInplace));
    const auto events = cur.run_to(3);
    ASSERT_EQ(events.size(), 3u);
    EXPECT_EQ(cur.position(), 3u);
    const Eigen::VectorXcd expected = testing::oracle_state(prefix(ir, 3));
    EXPECT_LT(testing::phase_distance(as_vector(cur.state()), expected), 1e-12);
    // (|000> + |110>)/sqrt2 with q2 = 1: (|001> + |111>)/sqrt2
    EXPECT_NEAR(std::norm(cur.state()[basis_index("001")]), 0.5, 1e-12);
    EXPECT_NEAR(std::norm(cur.state()[basis_index("111")]), 0.5, 1e-12);
}

TEST(Cursor, Fig5RunToEndIsDftColumn) {
    const auto ir = load_data("fig5.qasm");
    sim::ExecutionCursor cur(std::make_shared<qasm::CircuitIR>(ir), config(Method::DenseInplace));
    cur.run_to_end();
    EXPECT_TRUE(cur.finished());
    EXPECT_LT(testing::phase_distance(as_vector(cur.state()), testing::dft_matrix(8).col(0)), 1e-9);
}

TEST(Cursor, ExhaustedAfterEnd) {
    sim::ExecutionCursor cur(std::make_shared<qasm::CircuitIR>(load_data("fig4.qasm")), config(Method::DenseInplace));
    cur.run_to_end();
    try {
        cur.step();
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::CursorExhausted);
    }
}

TEST(Cursor, MatchesShotZeroOfExecute) {
    const auto ir = load_data("fig4.qasm");
    auto c = config(Method::DenseInplace, 1234);
    c.record_per_shot = true;
    const auto r = sim::execute(ir, c, 1);
    sim::ExecutionCursor cur(std::make_shared<qasm::CircuitIR>(ir), c);
    cur.run_to_end();
    EXPECT_EQ(cur.clbit_string(), r.per_shot[0]);
}

TEST(Cursor, CountsStateReads) {
    sim::ExecutionCursor cur(std::make_shared<qasm::CircuitIR>(load_data("fig4.qasm")), config(Method::DenseInplace));
    cur.run_to_end();
    EXPECT_EQ(cur.state_reads(), 0u);
    (void)cur.state();
    EXPECT_EQ(cur.state_reads(), 1u);
}

TEST(Unitary, Fig5IsDft8) {
    const auto u = sim::circuit_unitary(load_data("fig5.qasm"));
    EXPECT_LT(testing::phase_distance(u, testing::dft_matrix(8)), 1e-9);
}

TEST(Unitary, Fig7ClonesEveryFamilyMember) {
    const auto u = sim::circuit_unitary(load_data("fig7.qasm"));
    const auto h = testing::u_matrix(std::numbers::pi / 2, 0.0, std::numbers::pi);
    const Eigen::Matrix4cd h2 = Eigen::kroneckerProduct(h, h);
    for (int j = 0; j < 4; ++j) {
        const Eigen::Vector4cd psi = h2.col(j);
        Eigen::VectorXcd in = Eigen::VectorXcd::Zero(16);
        Eigen::VectorXcd want(16);
        for (int a = 0; a < 4; ++a) {
            in(4 * a) = psi(a);  // psi on (q0,q1), |00> on (q2,q3)
            for (int b = 0; b < 4; ++b) want(4 * a + b) = psi(a) * psi(b);
        }
        EXPECT_LT(testing::phase_distance(u * in, want), 1e-9) << "j = " << j;
    }
}

TEST(Unitary, SingleXIsNot) {
    const auto u = sim::circuit_unitary(qasm::load_circuit("OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[1];\nx q[0];\n"));
    Eigen::Matrix2cd x;
    x << 0, 1, 1, 0;
    EXPECT_LT((u - x).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Unitary, RejectsMeasurement) {
    try {
        sim::circuit_unitary(load_data("fig4.qasm"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonUnitaryProgram);
    }
}

TEST(Unitary, MatchesKroneckerOracleOnRandomCircuits) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto ir = qasm::load_circuit(testing::random_circuit(4, 25, seed));
        EXPECT_LT((sim::circuit_unitary(ir) - testing::oracle_unitary(ir)).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(EngineEquivalence, ListingCircuits) {
    for (const char* name : {"fig4.qasm", "fig5.qasm", "fig6.qasm", "fig7.qasm"}) {
        const auto ir = load_data(name);
        auto dense = config(Method::DenseInplace, 8);
        auto naive = config(Method::NaiveMatrix, 8);
        dense.record_statevector = naive.record_statevector = true;
        const auto a = sim::execute(ir, dense, 1);
        const auto b = sim::execute(ir, naive, 1);
        EXPECT_TRUE(equal_up_to_global_phase(*a.final_state, *b.final_state, 1e-9)) << name;
        EXPECT_EQ(sim::execute(ir, dense, 500).counts, sim::execute(ir, naive, 500).counts) << name;
    }
}

TEST(EngineEquivalence, RandomUnitaryCircuits) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const std::size_t n = 1 + seed % 6;
        const auto ir = qasm::load_circuit(testing::random_circuit(n, 1 + seed % 30, seed));
        auto dense = config(Method::DenseInplace, seed);
        auto naive = config(Method::NaiveMatrix, seed);
        dense.record_statevector = naive.record_statevector = true;
        const auto a = sim::execute(ir, dense, 1);
        const auto b = sim::execute(ir, naive, 1);
        ASSERT_TRUE(equal_up_to_global_phase(*a.final_state, *b.final_state, 1e-9)) << "seed " << seed;
        ASSERT_LT(testing::phase_distance(as_vector(*a.final_state), testing::oracle_state(ir)), 1e-9);
    }
}

TEST(EngineEquivalence, RandomMeasuredCircuitsGiveIdenticalCounts) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const std::size_t n = 1 + seed % 6;
        const auto ir = qasm::load_circuit(testing::random_circuit(n, 1 + seed % 30, 1000 + seed, true));
        const auto a = sim::execute(ir, config(Method::DenseInplace, seed), 100);
        const auto b = sim::execute(ir, config(Method::NaiveMatrix, seed), 100);
        ASSERT_EQ(a.counts, b.counts) << "seed " << seed;
    }
}

TEST(SamplePrefix, ReadsQubitsThenClbits) {
    const auto ir = load_data("fig6.qasm");
    sim::SampleSpec spec;
    spec.qubits = {2};
    spec.clbits = {0, 1};
    const auto counts = sim::sample_prefix(ir, ir.instructions.size(), spec, config(Method::DenseInplace, 4), 400);
    std::uint64_t total = 0;
    for (const auto& [k, n] : counts) {
        ASSERT_EQ(k.size(), 3u);
        EXPECT_TRUE(k.substr(1) == "00" || k.substr(1) == "11");
        total += n;
    }
    EXPECT_EQ(total, 400u);
}

TEST(SamplePrefix, HooksRunAtTheirPosition) {
    const auto ir = qasm::load_circuit("OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[1];\nh q[0];\nh q[0];\n");
    sim::SampleSpec spec;
    spec.qubits = {0};
    spec.hooks.push_back({1, [](QuantumState& s) { apply_1q(s, gates::pauli_z(), 0); }});
    const auto counts = sim::sample_prefix(ir, 2, spec, config(Method::DenseInplace), 100);
    EXPECT_EQ(counts.at("1"), 100u);
}

TEST(Json, StateRoundTrip) {
    auto c = config(Method::DenseInplace);
    c.record_statevector = true;
    const auto r = sim::execute(load_data("fig5.qasm"), c, 1);
    const auto j = sim::state_to_json(*r.final_state);
    EXPECT_EQ(j.at("ordering"), "q0-leftmost");
    const QuantumState back = sim::state_from_json(j);
    EXPECT_TRUE(equal_up_to_global_phase(back, *r.final_state, 1e-15));
}

TEST(Json, RunResultSchema) {
    const auto j = sim::run_result_to_json(sim::execute(load_data("fig4.qasm"), config(Method::NaiveMatrix, 5), 10));
    EXPECT_TRUE(j.contains("counts"));
    EXPECT_EQ(j.at("shots"), 10);
    EXPECT_EQ(j.at("engine").at("method"), "naive-matrix");
    EXPECT_EQ(j.at("engine").at("seed"), 5);
    EXPECT_TRUE(j.at("final_state").is_null());
}

}  // namespace
}  // namespace qdb
