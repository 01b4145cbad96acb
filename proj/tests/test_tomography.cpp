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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "optport/experiment.hpp"
#include "optport/io.hpp"
#include "optport/tomography.hpp"
#include "random_states.hpp"

namespace optport::tomography {
namespace {

using testing::max_abs;

DensityMatrix zero_state(int n) { return DensityMatrix::from_pure(StateVector(n)); }

DensityMatrix phi_plus() {
    CMatrix m = CMatrix::Zero(4, 4);
    m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
    return DensityMatrix::from_matrix(m);
}

double mean_trace_distance(const DensityMatrix& rho, std::int64_t shots, int seeds) {
    double total = 0.0;
    for (int s = 0; s < seeds; ++s) total += trace_distance(reconstruct(simulate_all(rho, shots, 900 + s)), rho);
    return total / seeds;
}

TEST(Settings, Counts) {
    EXPECT_EQ(settings_for(2).size(), 9u);
    const auto one = settings_for(1);
    ASSERT_EQ(one.size(), 3u);
    EXPECT_EQ(one[0].letters, "X");
    EXPECT_EQ(one[1].letters, "Y");
    EXPECT_EQ(one[2].letters, "Z");
    const auto three = settings_for(3);
    ASSERT_EQ(three.size(), 27u);
    EXPECT_TRUE(std::is_sorted(three.begin(), three.end()));
    EXPECT_EQ(three.front().letters, "XXX");
    EXPECT_EQ(three.back().letters, "ZZZ");
}

TEST(Settings, RejectsBadLetters) {
    EXPECT_THROW(PauliSetting("XI"), std::invalid_argument);
    EXPECT_THROW(PauliSetting(""), std::invalid_argument);
}

TEST(SimulateCounts, ZeroInZIsCertain) {
    const CountsTable t = simulate_counts(zero_state(1), PauliSetting("Z"), 1000, 1);
    ASSERT_EQ(t.counts.size(), 1u);
    EXPECT_EQ(t.counts.at("0"), 1000);
}

TEST(SimulateCounts, ZeroInXIsBalanced) {
    const CountsTable t = simulate_counts(zero_state(1), PauliSetting("X"), 8192, 2);
    EXPECT_NEAR(static_cast<double>(t.counts.at("0")) / 8192, 0.5, 0.02);
}

TEST(SimulateCounts, ReadoutFlipRate) {
    const CountsTable t = simulate_counts(zero_state(1), PauliSetting("Z"), 8192, 3, NoiseSpec{0.0, 0.1});
    EXPECT_NEAR(static_cast<double>(t.counts.at("1")) / 8192, 0.1, 0.02);
}

TEST(SimulateCounts, IsSeedDeterministic) {
    std::mt19937_64 rng(109);
    const DensityMatrix rho = testing::random_density(rng, 2);
    const auto a = simulate_all(rho, 500, 7);
    const auto b = simulate_all(rho, 500, 7);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].counts, b[i].counts);
}

TEST(SimulateCounts, RejectsBadArguments) {
    EXPECT_THROW(simulate_counts(zero_state(1), PauliSetting("Z"), 0, 1), std::invalid_argument);
    EXPECT_THROW(simulate_counts(zero_state(2), PauliSetting("Z"), 10, 1), std::invalid_argument);
    EXPECT_THROW(simulate_counts(zero_state(1), PauliSetting("Z"), 10, 1, NoiseSpec{0.0, 1.5}), std::invalid_argument);
}

TEST(CountsTable, ValidateCatchesInconsistentTables) {
    CountsTable t{PauliSetting("ZZ"), 10, {{"00", 4}, {"11", 5}}};
    EXPECT_THROW(t.validate(), InvariantViolation);
    t.counts["11"] = 6;
    EXPECT_NO_THROW(t.validate());
    t.counts["1"] = 0;
    EXPECT_THROW(t.validate(), InvariantViolation);
}

TEST(Reconstruct, BellFromHandWrittenExpectations) {
    Expectations e;
    for (const char* p : {"XX", "YY", "ZZ", "II"}) e[p] = 1.0;
    e["YY"] = -1.0;
    for (const char* p : {"IX", "IY", "IZ", "XI", "YI", "ZI", "XY", "XZ", "YX", "YZ", "ZX", "ZY"}) e[p] = 0.0;
    EXPECT_LE(max_abs(reconstruct_from_expectations(e, 2).entries() - phi_plus().entries()), 1e-10);
}

TEST(Reconstruct, MaximallyMixed) {
    const DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
    EXPECT_LE(max_abs(reconstruct_from_expectations(exact_expectations(mixed), 2).entries() - mixed.entries()),
              1e-12);
}

TEST(Reconstruct, AnalyticRoundTrip) {
    std::mt19937_64 rng(113);
    for (int trial = 0; trial < 100; ++trial) {
        const DensityMatrix rho = testing::random_density(rng, 2);
        const DensityMatrix back = reconstruct_from_expectations(exact_expectations(rho), 2);
        EXPECT_LE(max_abs(back.entries() - rho.entries()), 1e-10);
    }
}

TEST(Reconstruct, FiniteShotsStayCloseForZero) {
    EXPECT_LE(mean_trace_distance(zero_state(1), 8192, 10), 0.05);
    EXPECT_LE(mean_trace_distance(zero_state(2), 8192, 10), 0.05);
}

TEST(Reconstruct, OutputIsHermitianWithUnitTrace) {
    std::mt19937_64 rng(127);
    for (int trial = 0; trial < 20; ++trial) {
        const DensityMatrix rho = testing::random_density(rng, 2);
        const DensityMatrix r = reconstruct(simulate_all(rho, 256, trial));
        EXPECT_LE(max_abs(r.entries() - r.entries().adjoint()), 1e-9);
        EXPECT_NEAR(r.trace(), 1.0, 1e-9);
    }
}

TEST(Reconstruct, ShotNoiseShrinksAsInverseSquareRoot) {
    const DensityMatrix rho = DensityMatrix::from_pure(gates::prep_paper_state());
    const std::int64_t shots[] = {1 << 10, 1 << 13, 1 << 16};
    double xs[3], ys[3];
    for (int i = 0; i < 3; ++i) {
        xs[i] = std::log(static_cast<double>(shots[i]));
        ys[i] = std::log(mean_trace_distance(rho, shots[i], 10));
    }
    const double mx = (xs[0] + xs[1] + xs[2]) / 3, my = (ys[0] + ys[1] + ys[2]) / 3;
    double num = 0.0, den = 0.0;
    for (int i = 0; i < 3; ++i) {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
    }
    EXPECT_NEAR(num / den, -0.5, 0.15);
}

TEST(Reconstruct, RejectsIncompleteTables) {
    auto tables = simulate_all(zero_state(2), 100, 1);
    tables.pop_back();
    EXPECT_THROW(reconstruct(tables), InvariantViolation);
    auto dup = simulate_all(zero_state(1), 100, 1);
    dup.push_back(dup.front());
    EXPECT_THROW(reconstruct(dup), InvariantViolation);
}

TEST(Fidelity, SelfIsOne) {
    std::mt19937_64 rng(131);
    for (int trial = 0; trial < 50; ++trial) {
        const DensityMatrix rho = testing::random_density(rng, 2);
        EXPECT_NEAR(fidelity(rho, rho), 1.0, 1e-10);
    }
}

TEST(Fidelity, OrthogonalIsZero) {
    const DensityMatrix zero = zero_state(1);
    const DensityMatrix one = DensityMatrix::from_pure(StateVector::basis(1, 1));
    EXPECT_NEAR(fidelity(zero, one), 0.0, 1e-12);
}

TEST(Fidelity, IsSymmetric) {
    std::mt19937_64 rng(137);
    for (int trial = 0; trial < 100; ++trial) {
        const DensityMatrix a = testing::random_density(rng, 2);
        const DensityMatrix b = testing::random_density(rng, 2);
        EXPECT_NEAR(fidelity(a, b), fidelity(b, a), 1e-8);
    }
}

TEST(Fidelity, PureCaseMatchesOverlap) {
    std::mt19937_64 rng(139);
    const StateVector a = testing::haar_state(rng, 2);
    const StateVector b = testing::haar_state(rng, 2);
    EXPECT_NEAR(fidelity(DensityMatrix::from_pure(a), DensityMatrix::from_pure(b)), overlap_fidelity(a, b), 1e-10);
}

TEST(Fidelity, MixedPairMatchesKnownValue) {
    // F(diag(p, 1-p), diag(q, 1-q)) = sqrt(pq) + sqrt((1-p)(1-q)).
    CMatrix a = CMatrix::Zero(2, 2), b = CMatrix::Zero(2, 2);
    a(0, 0) = 0.3;
    a(1, 1) = 0.7;
    b(0, 0) = 0.8;
    b(1, 1) = 0.2;
    const double expected = std::sqrt(0.3 * 0.8) + std::sqrt(0.7 * 0.2);
    EXPECT_NEAR(fidelity(DensityMatrix::from_matrix(a), DensityMatrix::from_matrix(b)), expected, 1e-12);
}

TEST(Evolve, DepolarizingLowersFidelityMonotonically) {
    const gates::Circuit prep = gates::prep_circuit();
    const DensityMatrix theory = DensityMatrix::from_pure(gates::prep_paper_state());
    double previous_exact = 2.0, previous_sampled = 2.0;
    for (double p : {0.0, 0.01, 0.05, 0.1}) {
        const DensityMatrix noisy = evolve(prep, zero_state(2), p);
        const double exact = fidelity(theory, noisy);
        double sampled = 0.0;
        for (int s = 0; s < 10; ++s) sampled += fidelity(theory, reconstruct(simulate_all(noisy, 8192, 300 + s)));
        sampled /= 10;
        EXPECT_LE(exact, previous_exact);
        EXPECT_LE(sampled, previous_sampled);
        previous_exact = exact;
        previous_sampled = sampled;
    }
}

TEST(Evolve, NoiselessMatchesStateVector) {
    const DensityMatrix rho = evolve(gates::prep_circuit(), zero_state(2));
    EXPECT_LE(max_abs(rho.entries() - DensityMatrix::from_pure(gates::prep_paper_state()).entries()), 1e-12);
}

TEST(Evolve, FullDepolarizingOfOneQubitGate) {
    gates::Circuit c(1);
    c.h(0);
    EXPECT_LE(max_abs(evolve(c, zero_state(1), 1.0).entries() - CMatrix::Identity(2, 2) / 2.0), 1e-12);
}

class FixtureData : public ::testing::Test {
   protected:
    static Fixtures fixtures() { return paper_fixtures(io::data_dir()); }
};

TEST_F(FixtureData, TracesAreOne) {
    const Fixtures f = fixtures();
    EXPECT_NEAR(f.rho_prime.trace(), 0.352 + 0.135 + 0.175 + 0.338, 1e-12);
    EXPECT_NEAR(f.rho_double_prime.trace(), 0.41 + 0.134 + 0.261 + 0.195, 1e-12);
    EXPECT_NEAR(f.rho_prime.trace(), 1.0, 1e-12);
    EXPECT_NEAR(f.rho_double_prime.trace(), 1.0, 1e-12);
}

TEST_F(FixtureData, TheoryIsPure) { EXPECT_NEAR(fixtures().rho_theory.purity(), 1.0, 1e-10); }

TEST_F(FixtureData, FidelitiesMatchIndependentComputation) {
    // Reference values from a separate matrix-square-root implementation.
    const Fixtures f = fixtures();
    EXPECT_NEAR(fidelity(f.rho_theory, f.rho_prime), 0.92219154, 1e-6);
    EXPECT_NEAR(fidelity(f.rho_theory, f.rho_double_prime), 0.77605807, 1e-6);
    EXPECT_NEAR(fidelity(f.rho_prime, f.rho_double_prime), 0.93777757, 1e-6);
}

TEST_F(FixtureData, PreparedFidelityMatchesReportedValue) {
    const Fixtures f = fixtures();
    EXPECT_NEAR(fidelity(f.rho_theory, f.rho_prime), experiment::kReportedPreparedFidelity, 0.02);
}

}  // namespace
}  // namespace optport::tomography
