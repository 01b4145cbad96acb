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

#pragma once

// Compression of a sparse n-qubit state onto its last m' = ceil(log2 m) qubits.
//
// Given |psi> = sum_i a_i |x_i> with m mutually orthonormal x_i, the compiler completes
// {x_i} to a full basis by Gram-Schmidt and builds U = sum_i |y_i><x_i| where
// y_i = |0>^{n-m'} ⊗ |binary(i)> for the m nonzero terms. U|psi> then lives in the
// first 2^{m'} computational slots and can be teleported with m' Bell pairs.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "optport/qcore.hpp"

namespace optport::compiler {

inline constexpr double kZeroAmplitude = 1e-12;
inline constexpr double kOrthonormal = 1e-10;
inline constexpr double kResidualCutoff = 1e-8;
inline constexpr double kCompleteness = 1e-9;
inline constexpr double kSupportLeak = 1e-10;

/// A term's basis vector: either a computational index or a dense unit vector.
using TermVector = std::variant<std::size_t, CVector>;

struct Term {
    Complex amplitude;
    TermVector vector;
};

class SparseState {
   public:
    /// Validates 1 <= m <= 2^n, pairwise orthonormal vectors, and unit norm.
    /// Throws InvariantViolation otherwise.
    SparseState(int n_qubits, std::vector<Term> terms);

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return dim_of(n_qubits_); }
    const std::vector<Term>& terms() const { return terms_; }

    /// Dense form of term i's vector.
    CVector vector(std::size_t i) const;
    /// sum_i a_i |x_i> as a dense state.
    StateVector dense() const;

   private:
    int n_qubits_;
    std::vector<Term> terms_;
};

struct UnknownCount {
    std::size_t m;
    int m_prime;
    bool operator==(const UnknownCount&) const = default;
};

/// ceil(log2 m), with 1 -> 0. Throws for m = 0.
int ceil_log2(std::size_t m);

/// m = number of amplitudes with |a| > kZeroAmplitude. Throws InvariantViolation when m = 0.
UnknownCount count_unknowns(std::span<const Complex> amplitudes);
UnknownCount count_unknowns(const SparseState& state);

/// Extends `partial` (orthonormal within kOrthonormal) to `dim` orthonormal vectors.
/// New vectors come from computational basis candidates scanned in ascending order,
/// skipping any whose residual after projection has norm < kResidualCutoff.
std::vector<CVector> complete_basis(const std::vector<CVector>& partial, std::size_t dim);

struct CompressionPlan {
    std::size_t m = 0;
    int m_prime = 0;
    int n_qubits = 0;
    /// Nonzero-amplitude terms first (input order), then zero-amplitude terms, then
    /// Gram-Schmidt completions.
    std::vector<CVector> completed_basis;
    /// targets[i] is the computational index y_i that completed_basis[i] maps to.
    std::vector<std::size_t> targets;
    UnitaryMatrix unitary = UnitaryMatrix::identity(0);
};

CompressionPlan build_plan(const SparseState& state);

struct CompressedState {
    int m_prime = 0;
    /// U|psi> on all n qubits, i.e. |0>^{n-m'} ⊗ |phi>.
    StateVector state;
    /// a'_i, in target order (coefficient of |y_i>).
    std::vector<Complex> coefficients;

    /// |phi>: the last m' qubits (first 2^{m'} amplitudes).
    StateVector payload() const;
};

/// Applies plan.unitary; throws InvariantViolation if amplitude leaks past slot 2^{m'}.
CompressedState compress(const SparseState& state, const CompressionPlan& plan);

/// Bob's side: |0>^{n-m'} ⊗ payload, then U^dagger.
StateVector decompress(const StateVector& payload, const CompressionPlan& plan);

// ---------------------------------------------------------------------------
// Verification of externally claimed compression maps (e.g. published tables)
// ---------------------------------------------------------------------------

/// One summand |target><source| of a claimed map. `source` is sum_j c_j |a_j>; the
/// verifier normalizes it.
struct ClaimedTerm {
    std::size_t target;
    std::vector<std::pair<std::size_t, Complex>> source;
};

struct ClaimedMap {
    int n_qubits = 0;
    std::vector<ClaimedTerm> terms;
};

/// The claimed image set is not a bijection onto the computational basis.
class MalformedClaim : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

struct VerificationReport {
    bool unitary = false;
    double unitarity_defect = 0.0;
    /// Some bra needed rescaling to unit norm.
    bool normalized_sources = false;
    /// Claimed map applied to the state is |0>^{n-m'} ⊗ |phi> with m' = ceil(log2 m).
    bool compresses = false;
    std::size_t m = 0;
    int optimal_bell_pairs = 0;
    /// Qubits spanned by the image's support: bit width of its highest occupied slot.
    int implied_bell_pairs = 0;
    std::optional<int> claimed_bell_pairs;
    bool count_matches = true;
    /// claimed map applied to the dense state (unnormalized if the map is not unitary).
    CVector image;

    bool passed() const { return unitary && compresses && count_matches; }
};

/// Dense matrix of a claimed map, sources normalized. Throws MalformedClaim unless the
/// targets form a permutation of 0..2^n-1 and every source index is in range.
CMatrix claimed_matrix(const ClaimedMap& claim, bool* normalized_any = nullptr);

VerificationReport verify_claimed_unitary(const SparseState& state, const ClaimedMap& claim,
                                          std::optional<int> claimed_bell_pairs = std::nullopt);

}  // namespace optport::compiler
