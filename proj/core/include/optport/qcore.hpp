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

// Dense complex linear algebra for small registers: state vectors, unitaries,
// density matrices, tensor products, partial trace, projective measurement.
//
// Qubit ordering: qubit 0 is the most significant bit of an amplitude index,
// so |q0 q1 ... q_{n-1}> reads left to right the same way kets are written.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace optport {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Raised when a value violates one of the documented invariants (norm, unitarity,
/// orthonormality, ...). Distinct from std::invalid_argument, which signals a malformed
/// request such as an out-of-range qubit index.
class InvariantViolation : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// Malformed textual or JSON input.
class ParseError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

namespace tol {
inline constexpr double kNorm = 1e-10;
inline constexpr double kUnitary = 1e-10;
inline constexpr double kHermitian = 1e-10;
inline constexpr double kPsdInternal = 1e-10;
inline constexpr double kPsdFixture = 1e-6;
}  // namespace tol

inline std::size_t dim_of(int n_qubits) { return std::size_t{1} << n_qubits; }

/// Number of qubits for a power-of-two dimension; throws if `dim` is not a power of two.
int qubits_for_dim(std::size_t dim);

class StateVector {
   public:
    /// |0...0> on `n_qubits` qubits (n = 0 gives the scalar state 1).
    explicit StateVector(int n_qubits = 0);

    /// Validates length 2^n and unit norm within tol::kNorm.
    static StateVector from_amplitudes(CVector amplitudes);
    /// Rescales to unit norm first; throws on the zero vector.
    static StateVector normalized(CVector amplitudes);
    static StateVector basis(int n_qubits, std::size_t index);

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
    const CVector& amplitudes() const { return amplitudes_; }
    Complex operator[](std::size_t i) const { return amplitudes_[static_cast<Eigen::Index>(i)]; }
    double norm() const { return amplitudes_.norm(); }

   private:
    StateVector(int n_qubits, CVector amplitudes) : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {}
    int n_qubits_;
    CVector amplitudes_;
};

class UnitaryMatrix {
   public:
    /// Validates ||U^dagger U - I||_max <= tol.
    explicit UnitaryMatrix(CMatrix entries, double tolerance = tol::kUnitary);
    static UnitaryMatrix identity(int n_qubits);

    std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
    int n_qubits() const { return qubits_for_dim(dim()); }
    const CMatrix& entries() const { return entries_; }

    UnitaryMatrix adjoint() const;
    StateVector apply(const StateVector& state) const;

   private:
    struct Unchecked {};
    UnitaryMatrix(CMatrix entries, Unchecked) : entries_(std::move(entries)) {}
    CMatrix entries_;
};

/// Largest |(U^dagger U - I)_{ij}|.
double unitarity_defect(const CMatrix& m);

class DensityMatrix {
   public:
    /// Checks Hermiticity and unit trace; `psd_slack` bounds how negative the smallest
    /// eigenvalue may be. Pass a negative slack to skip the positivity check
    /// (finite-shot linear-inversion reconstructions are not PSD in general).
    static DensityMatrix from_matrix(CMatrix entries, double psd_slack = tol::kPsdInternal);
    static DensityMatrix from_pure(const StateVector& state);
    static DensityMatrix maximally_mixed(int n_qubits);

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
    const CMatrix& entries() const { return entries_; }
    Complex operator()(std::size_t r, std::size_t c) const {
        return entries_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }

    double trace() const { return entries_.trace().real(); }
    double purity() const;
    Eigen::VectorXd eigenvalues() const;

   private:
    DensityMatrix(int n_qubits, CMatrix entries) : n_qubits_(n_qubits), entries_(std::move(entries)) {}
    int n_qubits_;
    CMatrix entries_;
};

/// Kronecker product; `a` occupies the most significant qubits of the result.
StateVector tensor(const StateVector& a, const StateVector& b);
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Reduced density matrix over `keep` (any order; result follows ascending qubit order).
/// Throws std::invalid_argument for an empty or out-of-range keep set.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

/// <factor| applied on `qubits` of `state`, renormalized. Used to peel off a register
/// known to sit in a definite state (e.g. after a Bell measurement).
/// Throws InvariantViolation if the overlap vanishes.
StateVector project_onto(const StateVector& state, const std::vector<int>& qubits, const StateVector& factor);

/// Applies a k-qubit operator to the listed qubits (listed order = operator's qubit order).
CVector apply_local(const CVector& amplitudes, int n_qubits, const std::vector<int>& qubits, const CMatrix& op);

/// True iff some unit complex c has ||a - c b|| <= tol, with c taken from the
/// largest-magnitude entry of b.
bool equal_up_to_global_phase(const StateVector& a, const StateVector& b, double tol);

/// |<a|b>|, the fidelity between two pure states in the unsquared convention.
double overlap_fidelity(const StateVector& a, const StateVector& b);

// ---------------------------------------------------------------------------
// Measurement
// ---------------------------------------------------------------------------

enum class BasisKind { computational, bell, plus_minus, pauli_setting };

std::string to_string(BasisKind kind);

struct MeasurementBasis {
    BasisKind kind = BasisKind::computational;
    /// One of X/Y/Z per measured qubit; only used by pauli_setting.
    std::string letters;

    static MeasurementBasis computational() { return {BasisKind::computational, {}}; }
    static MeasurementBasis bell() { return {BasisKind::bell, {}}; }
    static MeasurementBasis plus_minus() { return {BasisKind::plus_minus, {}}; }
    static MeasurementBasis pauli(std::string letters) { return {BasisKind::pauli_setting, std::move(letters)}; }

    /// Columns are the basis vectors, column index = outcome bits (first qubit most significant).
    /// Bell outcomes are (z, x): 00 = Phi+, 01 = Psi+, 10 = Phi-, 11 = Psi-.
    CMatrix vectors(std::size_t n_measured) const;
};

struct MeasurementRecord {
    BasisKind basis = BasisKind::computational;
    /// One 0/1 per measured bit.
    std::vector<int> outcome;
    double probability = 0.0;
    StateVector post_state;

    std::string bits() const;
};

struct Branch {
    std::vector<int> outcome;
    double probability = 0.0;
    StateVector post_state;
};

struct BranchSet {
    /// Sorted by outcome.
    std::vector<Branch> branches;
    /// Probability mass of outcomes dropped for being below kBranchCutoff.
    double dropped_mass = 0.0;
};

inline constexpr double kBranchCutoff = 1e-14;

/// Samples one outcome by the Born rule using a generator seeded with `seed`.
MeasurementRecord measure_projective(const StateVector& state, const std::vector<int>& qubits,
                                     const MeasurementBasis& basis, std::uint64_t seed);

/// Every outcome with its probability and renormalized post-measurement state.
BranchSet branch_all_outcomes(const StateVector& state, const std::vector<int>& qubits,
                              const MeasurementBasis& basis);

/// Outcome index (bits packed MSB first) -> bit vector of length `width`.
std::vector<int> unpack_bits(std::size_t value, std::size_t width);

/// Uniform double in [0, 1) from 53 random bits; identical on every platform.
double uniform01(std::uint64_t bits);

/// SplitMix64 finalizer, used to derive independent seeds from (seed, index).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace optport
