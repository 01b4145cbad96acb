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

#include "optport/qcore.hpp"
#include "split_index.hpp"

namespace optport {

namespace {

CMatrix single_qubit_eigenbasis(char letter) {
    const double s = 1.0 / std::numbers::sqrt2;
    CMatrix b(2, 2);
    switch (letter) {
        case 'Z':
            b << 1, 0, 0, 1;
            break;
        case 'X':
            b << s, s, s, -s;
            break;
        case 'Y':
            b << s, s, Complex(0, s), Complex(0, -s);
            break;
        default:
            throw std::invalid_argument(std::string("unknown Pauli letter '") + letter + "'");
    }
    return b;
}

CMatrix bell_vectors() {
    const double s = 1.0 / std::numbers::sqrt2;
    CMatrix b = CMatrix::Zero(4, 4);
    // Column (z, x): (|0 x> + (-1)^z |1 (1-x)>) / sqrt2.
    for (int z = 0; z < 2; ++z) {
        for (int x = 0; x < 2; ++x) {
            const int col = (z << 1) | x;
            b(x, col) = s;
            b(2 | (1 - x), col) = z == 0 ? s : -s;
        }
    }
    return b;
}

/// Amplitudes c_o(rest) = <b_o| psi restricted to each rest index.
CVector outcome_coefficients(const StateVector& state, const detail::SplitIndex& split, const CMatrix& vectors,
                             std::size_t outcome) {
    CVector c(static_cast<Eigen::Index>(split.rest_dim()));
    for (std::size_t r = 0; r < split.rest_dim(); ++r) {
        Complex acc = 0.0;
        for (std::size_t l = 0; l < split.local_dim(); ++l) {
            acc += std::conj(vectors(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(outcome))) *
                   state[split.full(l, r)];
        }
        c[static_cast<Eigen::Index>(r)] = acc;
    }
    return c;
}

StateVector collapse(const StateVector& state, const detail::SplitIndex& split, const CMatrix& vectors,
                     std::size_t outcome, const CVector& coefficients) {
    CVector out = CVector::Zero(static_cast<Eigen::Index>(state.dim()));
    for (std::size_t r = 0; r < split.rest_dim(); ++r) {
        for (std::size_t l = 0; l < split.local_dim(); ++l) {
            out[static_cast<Eigen::Index>(split.full(l, r))] =
                vectors(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(outcome)) *
                coefficients[static_cast<Eigen::Index>(r)];
        }
    }
    return StateVector::normalized(std::move(out));
}

void check_basis_arity(const MeasurementBasis& basis, std::size_t n_measured) {
    if (n_measured == 0) {
        throw std::invalid_argument("measurement needs at least one qubit");
    }
    if (basis.kind == BasisKind::bell && n_measured != 2) {
        throw std::invalid_argument("Bell measurement acts on exactly 2 qubits");
    }
    if (basis.kind == BasisKind::pauli_setting && basis.letters.size() != n_measured) {
        throw std::invalid_argument("Pauli setting needs one letter per measured qubit");
    }
}

}  // namespace

std::string to_string(BasisKind kind) {
    switch (kind) {
        case BasisKind::computational:
            return "computational";
        case BasisKind::bell:
            return "bell";
        case BasisKind::plus_minus:
            return "plus_minus";
        case BasisKind::pauli_setting:
            return "pauli_setting";
    }
    return "unknown";
}

CMatrix MeasurementBasis::vectors(std::size_t n_measured) const {
    check_basis_arity(*this, n_measured);
    switch (kind) {
        case BasisKind::computational: {
            const auto d = static_cast<Eigen::Index>(std::size_t{1} << n_measured);
            return CMatrix::Identity(d, d);
        }
        case BasisKind::bell:
            return bell_vectors();
        case BasisKind::plus_minus: {
            CMatrix out = CMatrix::Identity(1, 1);
            for (std::size_t i = 0; i < n_measured; ++i) out = kron(out, single_qubit_eigenbasis('X'));
            return out;
        }
        case BasisKind::pauli_setting: {
            CMatrix out = CMatrix::Identity(1, 1);
            for (char c : letters) out = kron(out, single_qubit_eigenbasis(c));
            return out;
        }
    }
    throw std::invalid_argument("unknown basis kind");
}

std::string MeasurementRecord::bits() const {
    std::string s;
    for (int b : outcome) s.push_back(b ? '1' : '0');
    return s;
}

std::vector<int> unpack_bits(std::size_t value, std::size_t width) {
    std::vector<int> bits(width);
    for (std::size_t i = 0; i < width; ++i) bits[i] = static_cast<int>((value >> (width - 1 - i)) & 1U);
    return bits;
}

double uniform01(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

MeasurementRecord measure_projective(const StateVector& state, const std::vector<int>& qubits,
                                     const MeasurementBasis& basis, std::uint64_t seed) {
    const detail::SplitIndex split(state.n_qubits(), qubits);
    const CMatrix vectors = basis.vectors(qubits.size());
    const double u = uniform01(mix_seed(seed, 0));

    double cumulative = 0.0;
    std::size_t chosen = split.local_dim();
    CVector chosen_coeffs;
    double chosen_p = 0.0;
    std::size_t last_nonzero = split.local_dim();
    CVector last_coeffs;
    double last_p = 0.0;
    for (std::size_t o = 0; o < split.local_dim(); ++o) {
        CVector c = outcome_coefficients(state, split, vectors, o);
        const double p = c.squaredNorm();
        if (p > kBranchCutoff) {
            last_nonzero = o;
            last_coeffs = c;
            last_p = p;
        }
        cumulative += p;
        if (u < cumulative && p > kBranchCutoff) {
            chosen = o;
            chosen_coeffs = std::move(c);
            chosen_p = p;
            break;
        }
    }
    if (chosen == split.local_dim()) {
        // Rounding left u above the accumulated mass; fall back to the last possible outcome.
        chosen = last_nonzero;
        chosen_coeffs = std::move(last_coeffs);
        chosen_p = last_p;
    }
    MeasurementRecord rec;
    rec.basis = basis.kind;
    rec.outcome = unpack_bits(chosen, qubits.size());
    rec.probability = chosen_p;
    rec.post_state = collapse(state, split, vectors, chosen, chosen_coeffs);
    return rec;
}

BranchSet branch_all_outcomes(const StateVector& state, const std::vector<int>& qubits,
                              const MeasurementBasis& basis) {
    const detail::SplitIndex split(state.n_qubits(), qubits);
    const CMatrix vectors = basis.vectors(qubits.size());
    BranchSet out;
    for (std::size_t o = 0; o < split.local_dim(); ++o) {
        const CVector c = outcome_coefficients(state, split, vectors, o);
        const double p = c.squaredNorm();
        if (p < kBranchCutoff) {
            out.dropped_mass += p;
            continue;
        }
        out.branches.push_back(Branch{unpack_bits(o, qubits.size()), p, collapse(state, split, vectors, o, c)});
    }
    return out;
}

}  // namespace optport
