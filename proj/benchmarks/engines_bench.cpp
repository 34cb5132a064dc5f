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

#include <benchmark/benchmark.h>

#include <random>
#include <sstream>

#include "qdb/harness/cross_engine.hpp"
#include "qdb/qasm/ir.hpp"
#include "qdb/sim/engine.hpp"

namespace {

// Layers of random single-qubit rotations and nearest-neighbour CNOTs.
qdb::qasm::CircuitIR random_circuit(std::size_t n, std::size_t gates, bool measure) {
    std::mt19937_64 rng(n * 1000 + gates);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
    std::ostringstream src;
    src << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" << n << "];\ncreg c[" << n << "];\n";
    for (std::size_t g = 0; g < gates; ++g) {
        const auto a = pick(rng);
        switch (g % 3) {
            case 0: src << "h q[" << a << "];\n"; break;
            case 1: src << "u3(" << angle(rng) << "," << angle(rng) << "," << angle(rng) << ") q[" << a << "];\n"; break;
            default: src << "cx q[" << a << "],q[" << (a + 1) % n << "];\n"; break;
        }
    }
    if (measure) src << "measure q -> c;\n";
    return qdb::qasm::load_circuit(src.str());
}

void BM_ExecuteDense(benchmark::State& st) {
    const auto ir = random_circuit(static_cast<std::size_t>(st.range(0)), 100, false);
    qdb::sim::EngineConfig config;
    for (auto _ : st) benchmark::DoNotOptimize(qdb::sim::execute(ir, config, 1));
}
BENCHMARK(BM_ExecuteDense)->DenseRange(8, 20, 4)->Unit(benchmark::kMillisecond);

void BM_ExecuteNaive(benchmark::State& st) {
    const auto ir = random_circuit(static_cast<std::size_t>(st.range(0)), 100, false);
    qdb::sim::EngineConfig config;
    config.method = qdb::sim::Method::NaiveMatrix;
    for (auto _ : st) benchmark::DoNotOptimize(qdb::sim::execute(ir, config, 1));
}
BENCHMARK(BM_ExecuteNaive)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_SampleShots(benchmark::State& st) {
    const auto ir = random_circuit(10, 60, true);
    qdb::sim::EngineConfig config;
    const auto shots = static_cast<std::uint64_t>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(qdb::sim::execute(ir, config, shots));
    st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_SampleShots)->Arg(100)->Arg(1060)->Unit(benchmark::kMillisecond);

void BM_CrossEngine(benchmark::State& st) {
    const auto ir = random_circuit(6, 40, true);
    qdb::sim::EngineConfig dense;
    qdb::sim::EngineConfig naive;
    naive.method = qdb::sim::Method::NaiveMatrix;
    for (auto _ : st) benchmark::DoNotOptimize(qdb::harness::cross_engine_verify(ir, {dense, naive}, 1060));
}
BENCHMARK(BM_CrossEngine)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
