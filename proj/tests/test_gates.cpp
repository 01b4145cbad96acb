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
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "optport/gates.hpp"
#include "random_states.hpp"

namespace optport::gates {
namespace {

using testing::haar_state;
using testing::max_abs;

constexpr double kInvSqrt2 = 0.70710678118654752440;

CMatrix hadamard() {
    CMatrix h(2, 2);
    h << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
    return h;
}

CMatrix cnot01() {
    CMatrix c = CMatrix::Zero(4, 4);
    c(0, 0) = c(1, 1) = c(2, 3) = c(3, 2) = 1.0;
    return c;
}

/// |0> ⊗ phi ⊗ |00> on four qubits, phi on q1.
StateVector teleport_input(const StateVector& phi) {
    return tensor(tensor(StateVector(1), phi), StateVector(2));
}

TEST(Gates, HadamardMakesPlus) {
    Circuit c(1);
    c.h(0);
    const StateVector out = apply(c, StateVector(1));
    EXPECT_NEAR(std::abs(out[0] - kInvSqrt2), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(out[1] - kInvSqrt2), 0.0, 1e-15);
}

TEST(Gates, CnotFlipsTarget) {
    Circuit c(2);
    c.cnot(0, 1);
    const StateVector out = apply(c, StateVector::basis(2, 0b10));
    EXPECT_NEAR(std::abs(out[0b11]), 1.0, 1e-15);
}

TEST(Gates, CnotControlOrderMatters) {
    Circuit c(2);
    c.cnot(1, 0);
    const StateVector out = apply(c, StateVector::basis(2, 0b01));
    EXPECT_NEAR(std::abs(out[0b11]), 1.0, 1e-15);
}

TEST(Gates, BellPreparationMatchesMatrixProduct) {
    Circuit c(2);
    c.h(0).cnot(0, 1);
    const CMatrix oracle = cnot01() * kron(hadamard(), CMatrix::Identity(2, 2));
    EXPECT_LE(max_abs(to_unitary(c).entries() - oracle), 1e-15);
    const StateVector out = apply(c, StateVector(2));
    EXPECT_NEAR(std::abs(out[0] - kInvSqrt2), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(out[3] - kInvSqrt2), 0.0, 1e-15);
}

TEST(Gates, EveryGateMatrixIsUnitary) {
    for (GateKind k : {GateKind::H, GateKind::S, GateKind::SDG, GateKind::T, GateKind::TDG, GateKind::X,
                       GateKind::Y, GateKind::Z, GateKind::CNOT}) {
        const Gate g{k, arity(k) == 1 ? std::vector<int>{0} : std::vector<int>{0, 1}};
        EXPECT_LE(unitarity_defect(g.matrix()), 1e-12) << name(k);
    }
}

TEST(Gates, InverseUndoesCircuit) {
    std::mt19937_64 rng(41);
    Circuit c(3);
    c.h(0).t(1).cnot(0, 2).s(2).y(1).tdg(0).cnot(2, 1).sdg(0).z(2).x(1);
    Circuit round = c;
    round.append(c.inverse());
    const StateVector s = haar_state(rng, 3);
    EXPECT_LE((apply(round, s).amplitudes() - s.amplitudes()).norm(), 1e-12);
}

TEST(Gates, ApplyIsLinear) {
    std::mt19937_64 rng(43);
    Circuit c(3);
    c.h(0).t(0).cnot(0, 1).s(1).h(2).cnot(2, 0).tdg(1);
    const CMatrix u = to_unitary(c).entries();
    for (int trial = 0; trial < 50; ++trial) {
        const CVector a = testing::gaussian_vector(rng, 8);
        const CVector b = testing::gaussian_vector(rng, 8);
        const Complex alpha(0.3, -0.7), beta(-1.1, 0.4);
        const CVector lhs = u * (alpha * a + beta * b);
        const StateVector ua = apply(c, StateVector::normalized(a));
        const StateVector ub = apply(c, StateVector::normalized(b));
        const CVector rhs = alpha * a.norm() * ua.amplitudes() + beta * b.norm() * ub.amplitudes();
        EXPECT_LE((lhs - rhs).norm(), 1e-10);
    }
}

TEST(Gates, RejectsBadTargets) {
    Circuit c(2);
    EXPECT_THROW(c.h(2), std::invalid_argument);
    EXPECT_THROW(c.cnot(1, 1), std::invalid_argument);
    EXPECT_THROW(c.add(GateKind::CNOT, {0}), std::invalid_argument);
    EXPECT_THROW(c.add(GateKind::H, {0, 1}), std::invalid_argument);
}

TEST(PrepState, SquaredAmplitudes) {
    const StateVector s = prep_paper_state();
    const double expected[] = {0.375, 0.125, 0.125, 0.375};
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(std::norm(s[i]), expected[i], 1e-12);
    EXPECT_NEAR(s.norm(), 1.0, 1e-12);
}

TEST(PrepState, MatchesClosedForm) {
    const double c = std::cos(std::numbers::pi / 8), s = std::sin(std::numbers::pi / 8);
    const Complex w = std::polar(1.0, -std::numbers::pi / 4);
    const Complex alpha = (c + w * s) * kInvSqrt2;
    const Complex beta = (-c + w * s) * kInvSqrt2;
    CVector v(4);
    v << alpha, beta, -beta, alpha;
    const Complex phase = std::polar(1.0, std::numbers::pi / 8);
    const StateVector expected = StateVector::normalized(phase * v);
    EXPECT_TRUE(equal_up_to_global_phase(prep_paper_state(), expected, 1e-12));
    EXPECT_NEAR(std::abs(prep_paper_state().amplitudes().dot(expected.amplitudes()) - 1.0), 0.0, 1e-12);
}

TEST(PrepState, IsBitReproducible) {
    const StateVector a = prep_paper_state();
    const StateVector b = prep_paper_state();
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(a[i].real(), b[i].real());
        EXPECT_EQ(a[i].imag(), b[i].imag());
    }
}

TEST(CoherentTeleport, ZeroStaysZero) {
    const StateVector out = apply(coherent_teleport_circuit(), teleport_input(StateVector(1)));
    const DensityMatrix bob = partial_trace(DensityMatrix::from_pure(out), {3});
    EXPECT_NEAR(std::abs(bob(0, 0)), 1.0, 1e-12);
}

TEST(CoherentTeleport, PlusArrivesAsPlus) {
    const StateVector plus = StateVector::normalized(CVector::Ones(2));
    const StateVector out = apply(coherent_teleport_circuit(), teleport_input(plus));
    const DensityMatrix bob = partial_trace(DensityMatrix::from_pure(out), {3});
    EXPECT_LE(max_abs(bob.entries() - CMatrix::Constant(2, 2, 0.5)), 1e-12);
}

TEST(CoherentTeleport, RandomInputsArrivePure) {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 200; ++trial) {
        const StateVector phi = haar_state(rng, 1);
        const StateVector out = apply(coherent_teleport_circuit(), teleport_input(phi));
        const DensityMatrix bob = partial_trace(DensityMatrix::from_pure(out), {3});
        EXPECT_NEAR(bob.purity(), 1.0, 1e-10);
        const double f = std::sqrt(std::abs(phi.amplitudes().dot(bob.entries() * phi.amplitudes())));
        EXPECT_NEAR(f, 1.0, 1e-10);
    }
}

TEST(CircuitText, RoundTrips) {
    Circuit c(3);
    c.h(0).t(1).tdg(2).s(0).sdg(1).x(2).y(0).z(1).cnot(2, 0);
    EXPECT_EQ(parse_circuit_text(to_text(c)), c);
}

TEST(CircuitText, AcceptsCommentsAndCase) {
    const Circuit c = parse_circuit_text("# header\nqubits 2\n\nh 0  # first\nCnot 0 1\n");
    Circuit expected(2);
    expected.h(0).cnot(0, 1);
    EXPECT_EQ(c, expected);
}

TEST(CircuitText, RejectsMalformedInput) {
    EXPECT_THROW(parse_circuit_text("H 0\n"), ParseError);
    EXPECT_THROW(parse_circuit_text(""), ParseError);
    EXPECT_THROW(parse_circuit_text("QUBITS 2\nFOO 0\n"), ParseError);
    EXPECT_THROW(parse_circuit_text("QUBITS 2\nH 5\n"), ParseError);
    EXPECT_THROW(parse_circuit_text("QUBITS 2\nCNOT 0\n"), ParseError);
    EXPECT_THROW(parse_circuit_text("QUBITS 2\nH x\n"), ParseError);
    EXPECT_THROW(parse_circuit_text("QUBITS 2\nQUBITS 2\n"), ParseError);
    EXPECT_THROW(parse_circuit_text("QUBITS 0\n"), ParseError);
}

}  // namespace
}  // namespace optport::gates
