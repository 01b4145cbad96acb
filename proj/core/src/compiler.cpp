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

#include "optport/compiler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace optport::compiler {

namespace {

CVector dense_vector(const TermVector& v, std::size_t dim) {
    if (const auto* index = std::get_if<std::size_t>(&v)) {
        if (*index >= dim) {
            throw InvariantViolation("term index " + std::to_string(*index) + " out of range for dimension " +
                                     std::to_string(dim));
        }
        CVector out = CVector::Zero(static_cast<Eigen::Index>(dim));
        out[static_cast<Eigen::Index>(*index)] = 1.0;
        return out;
    }
    const auto& dense = std::get<CVector>(v);
    if (static_cast<std::size_t>(dense.size()) != dim) {
        throw InvariantViolation("term vector has length " + std::to_string(dense.size()) + ", expected " +
                                 std::to_string(dim));
    }
    return dense;
}

void check_orthonormal(const std::vector<CVector>& vectors, double tolerance) {
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        for (std::size_t j = i; j < vectors.size(); ++j) {
            const Complex g = vectors[i].dot(vectors[j]);
            const double expected = i == j ? 1.0 : 0.0;
            if (std::abs(g - expected) > tolerance) {
                throw InvariantViolation("vectors " + std::to_string(i) + " and " + std::to_string(j) +
                                         " are not orthonormal (|<x_i|x_j> - delta| = " +
                                         std::to_string(std::abs(g - expected)) + ")");
            }
        }
    }
}

}  // namespace

SparseState::SparseState(int n_qubits, std::vector<Term> terms) : n_qubits_(n_qubits), terms_(std::move(terms)) {
    if (n_qubits < 0 || n_qubits > 16) {
        throw InvariantViolation("unsupported qubit count " + std::to_string(n_qubits));
    }
    if (terms_.empty() || terms_.size() > dim()) {
        throw InvariantViolation("term count " + std::to_string(terms_.size()) + " outside [1, 2^n]");
    }
    std::vector<CVector> vectors;
    vectors.reserve(terms_.size());
    double norm2 = 0.0;
    for (const auto& t : terms_) {
        vectors.push_back(dense_vector(t.vector, dim()));
        norm2 += std::norm(t.amplitude);
    }
    check_orthonormal(vectors, kOrthonormal);
    if (std::abs(norm2 - 1.0) > tol::kNorm) {
        throw InvariantViolation("amplitudes are not normalized (sum |a_i|^2 = " + std::to_string(norm2) + ")");
    }
}

CVector SparseState::vector(std::size_t i) const { return dense_vector(terms_.at(i).vector, dim()); }

StateVector SparseState::dense() const {
    CVector out = CVector::Zero(static_cast<Eigen::Index>(dim()));
    for (std::size_t i = 0; i < terms_.size(); ++i) out += terms_[i].amplitude * vector(i);
    return StateVector::normalized(std::move(out));
}

int ceil_log2(std::size_t m) {
    if (m == 0) throw std::invalid_argument("ceil_log2(0) is undefined");
    return static_cast<int>(std::bit_width(m - 1));
}

UnknownCount count_unknowns(std::span<const Complex> amplitudes) {
    const auto m = static_cast<std::size_t>(
        std::count_if(amplitudes.begin(), amplitudes.end(), [](Complex a) { return std::abs(a) > kZeroAmplitude; }));
    if (m == 0) {
        throw InvariantViolation("state has no amplitude above " + std::to_string(kZeroAmplitude));
    }
    return {m, ceil_log2(m)};
}

UnknownCount count_unknowns(const SparseState& state) {
    std::vector<Complex> amplitudes;
    amplitudes.reserve(state.terms().size());
    for (const auto& t : state.terms()) amplitudes.push_back(t.amplitude);
    return count_unknowns(amplitudes);
}

std::vector<CVector> complete_basis(const std::vector<CVector>& partial, std::size_t dim) {
    if (partial.size() > dim) {
        throw InvariantViolation("more input vectors than the dimension");
    }
    for (const auto& v : partial) {
        if (static_cast<std::size_t>(v.size()) != dim) {
            throw InvariantViolation("input vector length does not match dimension");
        }
    }
    check_orthonormal(partial, kOrthonormal);

    std::vector<CVector> basis = partial;
    basis.reserve(dim);
    for (std::size_t candidate = 0; candidate < dim && basis.size() < dim; ++candidate) {
        CVector r = CVector::Zero(static_cast<Eigen::Index>(dim));
        r[static_cast<Eigen::Index>(candidate)] = 1.0;
        // Modified Gram-Schmidt, two passes so the completion stays orthogonal to
        // working precision even when the inputs are dense.
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& b : basis) r -= b.dot(r) * b;
        }
        const double residual = r.norm();
        if (residual < kResidualCutoff) continue;
        basis.push_back(r / residual);
    }
    if (basis.size() != dim) {
        throw InvariantViolation("Gram-Schmidt completion produced " + std::to_string(basis.size()) + " of " +
                                 std::to_string(dim) + " vectors");
    }
    return basis;
}

CompressionPlan build_plan(const SparseState& state) {
    const auto [m, m_prime] = count_unknowns(state);
    const std::size_t dim = state.dim();

    std::vector<CVector> ordered;
    ordered.reserve(state.terms().size());
    for (std::size_t i = 0; i < state.terms().size(); ++i) {
        if (std::abs(state.terms()[i].amplitude) > kZeroAmplitude) ordered.push_back(state.vector(i));
    }
    for (std::size_t i = 0; i < state.terms().size(); ++i) {
        if (std::abs(state.terms()[i].amplitude) <= kZeroAmplitude) ordered.push_back(state.vector(i));
    }

    CompressionPlan plan;
    plan.m = m;
    plan.m_prime = m_prime;
    plan.n_qubits = state.n_qubits();
    plan.completed_basis = complete_basis(ordered, dim);

    // y_i = binary(i) padded with leading zeros for the nonzero terms; everything
    // else maps in ascending order onto the indices left over.
    plan.targets.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) plan.targets[i] = i;

    const auto d = static_cast<Eigen::Index>(dim);
    CMatrix u = CMatrix::Zero(d, d);
    for (std::size_t i = 0; i < dim; ++i) {
        u.row(static_cast<Eigen::Index>(plan.targets[i])) = plan.completed_basis[i].adjoint();
    }
    plan.unitary = UnitaryMatrix(std::move(u));
    return plan;
}

StateVector CompressedState::payload() const {
    const auto slots = static_cast<Eigen::Index>(dim_of(m_prime));
    return StateVector::normalized(state.amplitudes().head(slots));
}

CompressedState compress(const SparseState& state, const CompressionPlan& plan) {
    if (plan.n_qubits != state.n_qubits()) {
        throw InvariantViolation("plan was built for a different register size");
    }
    StateVector image = plan.unitary.apply(state.dense());
    const std::size_t slots = dim_of(plan.m_prime);
    double leak = 0.0;
    for (std::size_t i = slots; i < image.dim(); ++i) leak = std::max(leak, std::abs(image[i]));
    if (leak > kSupportLeak) {
        throw InvariantViolation("compressed state leaks amplitude " + std::to_string(leak) + " beyond slot " +
                                 std::to_string(slots) + "; plan does not match state");
    }
    CompressedState out;
    out.m_prime = plan.m_prime;
    out.coefficients.reserve(plan.m);
    for (std::size_t i = 0; i < plan.m; ++i) out.coefficients.push_back(image[plan.targets[i]]);
    out.state = std::move(image);
    return out;
}

StateVector decompress(const StateVector& payload, const CompressionPlan& plan) {
    if (payload.n_qubits() != plan.m_prime) {
        throw std::invalid_argument("payload has " + std::to_string(payload.n_qubits()) + " qubits, plan expects " +
                                    std::to_string(plan.m_prime));
    }
    const StateVector padded = tensor(StateVector(plan.n_qubits - plan.m_prime), payload);
    return plan.unitary.adjoint().apply(padded);
}

CMatrix claimed_matrix(const ClaimedMap& claim, bool* normalized_any) {
    const std::size_t dim = dim_of(claim.n_qubits);
    if (claim.terms.size() != dim) {
        throw MalformedClaim("claimed map has " + std::to_string(claim.terms.size()) + " terms, expected " +
                             std::to_string(dim));
    }
    std::vector<bool> seen(dim, false);
    const auto d = static_cast<Eigen::Index>(dim);
    CMatrix u = CMatrix::Zero(d, d);
    bool rescaled = false;
    for (const auto& term : claim.terms) {
        if (term.target >= dim) {
            throw MalformedClaim("image |a_" + std::to_string(term.target) + "> out of range");
        }
        if (seen[term.target]) {
            throw MalformedClaim("image |a_" + std::to_string(term.target) + "> appears twice (non-bijective)");
        }
        seen[term.target] = true;
        CVector source = CVector::Zero(d);
        for (const auto& [index, coeff] : term.source) {
            if (index >= dim) {
                throw MalformedClaim("source index " + std::to_string(index) + " out of range");
            }
            source[static_cast<Eigen::Index>(index)] += coeff;
        }
        const double norm = source.norm();
        if (norm < 1e-12) {
            throw MalformedClaim("source for image |a_" + std::to_string(term.target) + "> is zero");
        }
        if (std::abs(norm - 1.0) > 1e-12) rescaled = true;
        u.row(static_cast<Eigen::Index>(term.target)) = (source / norm).adjoint();
    }
    if (normalized_any) *normalized_any = rescaled;
    return u;
}

VerificationReport verify_claimed_unitary(const SparseState& state, const ClaimedMap& claim,
                                          std::optional<int> claimed_bell_pairs) {
    if (claim.n_qubits != state.n_qubits()) {
        throw MalformedClaim("claimed map acts on " + std::to_string(claim.n_qubits) + " qubits, state has " +
                             std::to_string(state.n_qubits()));
    }
    VerificationReport report;
    const CMatrix u = claimed_matrix(claim, &report.normalized_sources);
    report.unitarity_defect = unitarity_defect(u);
    report.unitary = report.unitarity_defect <= tol::kUnitary;

    const auto count = count_unknowns(state);
    report.m = count.m;
    report.optimal_bell_pairs = count.m_prime;

    report.image = u * state.dense().amplitudes();
    std::size_t highest = 0;
    for (Eigen::Index i = 0; i < report.image.size(); ++i) {
        if (std::abs(report.image[i]) > kSupportLeak) highest = static_cast<std::size_t>(i);
    }
    report.implied_bell_pairs = static_cast<int>(std::bit_width(highest));
    report.compresses = report.implied_bell_pairs <= report.optimal_bell_pairs;
    report.claimed_bell_pairs = claimed_bell_pairs;
    if (claimed_bell_pairs) {
        report.count_matches = *claimed_bell_pairs == report.implied_bell_pairs &&
                               *claimed_bell_pairs == report.optimal_bell_pairs;
    }
    return report;
}

}  // namespace optport::compiler
