// Copyright 2026 The optport Authors
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

#include <random>

#include <Eigen/QR>
#include <benchmark/benchmark.h>

#include "optport/compiler.hpp"
#include "optport/gates.hpp"
#include "optport/teleport.hpp"
#include "optport/tomography.hpp"

namespace {

using namespace optport;

compiler::SparseState dense_support_state(int n, std::size_t m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    const auto d = static_cast<Eigen::Index>(dim_of(n));
    CMatrix a(d, d);
    for (auto& x : a.reshaped()) x = Complex(g(rng), g(rng));
    const CMatrix q = Eigen::HouseholderQR<CMatrix>(a).householderQ();
    CVector amps(static_cast<Eigen::Index>(m));
    for (auto& x : amps) x = Complex(g(rng), g(rng));
    amps.normalize();
    std::vector<compiler::Term> terms;
    for (std::size_t i = 0; i < m; ++i) terms.push_back({amps[static_cast<Eigen::Index>(i)], CVector(q.col(static_cast<Eigen::Index>(i)))});
    return compiler::SparseState(n, std::move(terms));
}

void BM_BuildPlan(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto s = dense_support_state(n, dim_of(n) / 2 + 1, 1);
    for (auto _ : state) benchmark::DoNotOptimize(compiler::build_plan(s));
}
BENCHMARK(BM_BuildPlan)->DenseRange(2, 6);

void BM_TeleportExhaustive(benchmark::State& state) {
    const int mp = static_cast<int>(state.range(0));
    const auto s = dense_support_state(mp, dim_of(mp), 2);
    for (auto _ : state) benchmark::DoNotOptimize(teleport::run_optimal_teleport(s, teleport::Mode::exhaustive()));
}
BENCHMARK(BM_TeleportExhaustive)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);

void BM_ControlledExhaustive(benchmark::State& state) {
    const int mp = static_cast<int>(state.range(0));
    const auto s = dense_support_state(mp, dim_of(mp), 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(teleport::controlled_teleport(s, teleport::Mode::exhaustive(), {}));
    }
}
BENCHMARK(BM_ControlledExhaustive)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_SimulateAndReconstruct(benchmark::State& state) {
    const auto rho = DensityMatrix::from_pure(gates::prep_paper_state());
    const auto shots = state.range(0);
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(tomography::reconstruct(tomography::simulate_all(rho, shots, seed++)));
}
BENCHMARK(BM_SimulateAndReconstruct)->RangeMultiplier(8)->Range(1 << 10, 1 << 16)->Unit(benchmark::kMillisecond);

void BM_Fidelity(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto a = tomography::evolve(gates::Circuit(n).h(0), DensityMatrix::maximally_mixed(n), 0.0);
    auto c = gates::Circuit(n);
    for (int q = 0; q < n; ++q) c.h(q).t(q);
    const auto b = tomography::evolve(c, DensityMatrix::from_pure(StateVector(n)), 0.05);
    for (auto _ : state) benchmark::DoNotOptimize(tomography::fidelity(a, b));
}
BENCHMARK(BM_Fidelity)->DenseRange(1, 4);

void BM_NoisyEvolve(benchmark::State& state) {
    gates::Circuit c(4);
    c.append(gates::prep_circuit());
    c.append(gates::two_qubit_compression_circuit());
    c.append(gates::coherent_teleport_circuit());
    const auto rho = DensityMatrix::from_pure(StateVector(4));
    for (auto _ : state) benchmark::DoNotOptimize(tomography::evolve(c, rho, 0.01));
}
BENCHMARK(BM_NoisyEvolve)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
