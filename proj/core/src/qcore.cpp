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

#include "optport/qcore.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "split_index.hpp"

namespace optport {

int qubits_for_dim(std::size_t dim) {
    if (dim == 0 || !std::has_single_bit(dim)) {
        throw std::invalid_argument("dimension " + std::to_string(dim) + " is not a power of two");
    }
    return std::countr_zero(dim);
}

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 0 || n_qubits > 24) {
        throw std::invalid_argument("unsupported qubit count " + std::to_string(n_qubits));
    }
    amplitudes_ = CVector::Zero(static_cast<Eigen::Index>(dim_of(n_qubits)));
    amplitudes_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(CVector amplitudes) {
    const int n = qubits_for_dim(static_cast<std::size_t>(amplitudes.size()));
    const double deviation = std::abs(amplitudes.squaredNorm() - 1.0);
    if (deviation > tol::kNorm) {
        throw InvariantViolation("state vector is not normalized (|norm^2 - 1| = " + std::to_string(deviation) + ")");
    }
    return StateVector(n, std::move(amplitudes));
}

StateVector StateVector::normalized(CVector amplitudes) {
    const int n = qubits_for_dim(static_cast<std::size_t>(amplitudes.size()));
    const double norm = amplitudes.norm();
    if (norm < 1e-300) {
        throw InvariantViolation("cannot normalize the zero vector");
    }
    amplitudes /= norm;
    return StateVector(n, std::move(amplitudes));
}

StateVector StateVector::basis(int n_qubits, std::size_t index) {
    StateVector out(n_qubits);
    if (index >= out.dim()) {
        throw std::invalid_argument("basis index " + std::to_string(index) + " out of range");
    }
    out.amplitudes_[0] = 0.0;
    out.amplitudes_[static_cast<Eigen::Index>(index)] = 1.0;
    return out;
}

double unitarity_defect(const CMatrix& m) {
    if (m.rows() != m.cols()) return INFINITY;
    const CMatrix defect = m.adjoint() * m - CMatrix::Identity(m.rows(), m.cols());
    return defect.cwiseAbs().maxCoeff();
}

UnitaryMatrix::UnitaryMatrix(CMatrix entries, double tolerance) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) {
        throw std::invalid_argument("unitary must be square");
    }
    qubits_for_dim(static_cast<std::size_t>(entries_.rows()));
    const double defect = unitarity_defect(entries_);
    if (defect > tolerance) {
        throw InvariantViolation("matrix is not unitary (defect " + std::to_string(defect) + ")");
    }
}

UnitaryMatrix UnitaryMatrix::identity(int n_qubits) {
    const auto d = static_cast<Eigen::Index>(dim_of(n_qubits));
    return UnitaryMatrix(CMatrix::Identity(d, d), Unchecked{});
}

UnitaryMatrix UnitaryMatrix::adjoint() const { return UnitaryMatrix(entries_.adjoint(), Unchecked{}); }

StateVector UnitaryMatrix::apply(const StateVector& state) const {
    if (state.dim() != dim()) {
        throw std::invalid_argument("unitary of dimension " + std::to_string(dim()) + " applied to state of dimension " +
                                    std::to_string(state.dim()));
    }
    return StateVector::normalized(entries_ * state.amplitudes());
}

DensityMatrix DensityMatrix::from_matrix(CMatrix entries, double psd_slack) {
    if (entries.rows() != entries.cols()) {
        throw std::invalid_argument("density matrix must be square");
    }
    const int n = qubits_for_dim(static_cast<std::size_t>(entries.rows()));
    const double herm = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol::kHermitian) {
        throw InvariantViolation("density matrix is not Hermitian (defect " + std::to_string(herm) + ")");
    }
    const Complex tr = entries.trace();
    if (std::abs(tr - Complex(1.0)) > tol::kNorm) {
        throw InvariantViolation("density matrix trace is " + std::to_string(tr.real()) + ", expected 1");
    }
    // Exact Hermitian symmetrization so downstream eigensolvers see a clean input.
    CMatrix sym = 0.5 * (entries + entries.adjoint());
    DensityMatrix out(n, std::move(sym));
    if (psd_slack >= 0.0) {
        const double smallest = out.eigenvalues().minCoeff();
        if (smallest < -psd_slack) {
            throw InvariantViolation("density matrix has eigenvalue " + std::to_string(smallest));
        }
    }
    return out;
}

DensityMatrix DensityMatrix::from_pure(const StateVector& state) {
    return DensityMatrix(state.n_qubits(), state.amplitudes() * state.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
    const auto d = static_cast<Eigen::Index>(dim_of(n_qubits));
    return DensityMatrix(n_qubits, CMatrix::Identity(d, d) / static_cast<double>(d));
}

double DensityMatrix::purity() const { return (entries_ * entries_).trace().real(); }

Eigen::VectorXd DensityMatrix::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(entries_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

StateVector tensor(const StateVector& a, const StateVector& b) {
    CVector out(static_cast<Eigen::Index>(a.dim() * b.dim()));
    const auto nb = static_cast<Eigen::Index>(b.dim());
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(a.dim()); ++i) {
        out.segment(i * nb, nb) = a.amplitudes()[i] * b.amplitudes();
    }
    return StateVector::normalized(std::move(out));
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
    if (keep.empty()) {
        throw std::invalid_argument("partial_trace: keep set must not be empty");
    }
    std::vector<int> sorted = keep;
    std::sort(sorted.begin(), sorted.end());
    const detail::SplitIndex split(rho.n_qubits(), sorted);
    const auto dk = static_cast<Eigen::Index>(split.local_dim());
    CMatrix out = CMatrix::Zero(dk, dk);
    for (std::size_t e = 0; e < split.rest_dim(); ++e) {
        for (Eigen::Index i = 0; i < dk; ++i) {
            const auto fi = static_cast<Eigen::Index>(split.full(static_cast<std::size_t>(i), e));
            for (Eigen::Index j = 0; j < dk; ++j) {
                const auto fj = static_cast<Eigen::Index>(split.full(static_cast<std::size_t>(j), e));
                out(i, j) += rho.entries()(fi, fj);
            }
        }
    }
    return DensityMatrix::from_matrix(std::move(out), -1.0);
}

StateVector project_onto(const StateVector& state, const std::vector<int>& qubits, const StateVector& factor) {
    const detail::SplitIndex split(state.n_qubits(), qubits);
    if (factor.dim() != split.local_dim()) {
        throw std::invalid_argument("project_onto: factor dimension does not match qubit list");
    }
    CVector rest = CVector::Zero(static_cast<Eigen::Index>(split.rest_dim()));
    for (std::size_t r = 0; r < split.rest_dim(); ++r) {
        Complex acc = 0.0;
        for (std::size_t l = 0; l < split.local_dim(); ++l) {
            acc += std::conj(factor[l]) * state[split.full(l, r)];
        }
        rest[static_cast<Eigen::Index>(r)] = acc;
    }
    if (rest.norm() < 1e-12) {
        throw InvariantViolation("project_onto: state has no component along the given factor");
    }
    return StateVector::normalized(std::move(rest));
}

CVector apply_local(const CVector& amplitudes, int n_qubits, const std::vector<int>& qubits, const CMatrix& op) {
    const detail::SplitIndex split(n_qubits, qubits);
    const auto dl = static_cast<Eigen::Index>(split.local_dim());
    if (op.rows() != dl || op.cols() != dl) {
        throw std::invalid_argument("apply_local: operator size does not match qubit count");
    }
    CVector out(amplitudes.size());
    CVector local(dl);
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(dl));
    for (std::size_t r = 0; r < split.rest_dim(); ++r) {
        for (Eigen::Index l = 0; l < dl; ++l) {
            idx[static_cast<std::size_t>(l)] = static_cast<Eigen::Index>(split.full(static_cast<std::size_t>(l), r));
            local[l] = amplitudes[idx[static_cast<std::size_t>(l)]];
        }
        const CVector mapped = op * local;
        for (Eigen::Index l = 0; l < dl; ++l) out[idx[static_cast<std::size_t>(l)]] = mapped[l];
    }
    return out;
}

bool equal_up_to_global_phase(const StateVector& a, const StateVector& b, double tol) {
    if (a.n_qubits() != b.n_qubits()) {
        throw std::invalid_argument("equal_up_to_global_phase: qubit counts differ");
    }
    Eigen::Index k = 0;
    b.amplitudes().cwiseAbs().maxCoeff(&k);
    Complex phase = 1.0;
    const Complex ratio = a.amplitudes()[k] * std::conj(b.amplitudes()[k]);
    if (std::abs(ratio) > 0.0) phase = ratio / std::abs(ratio);
    return (a.amplitudes() - phase * b.amplitudes()).norm() <= tol;
}

double overlap_fidelity(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("overlap_fidelity: dimensions differ");
    }
    return std::abs(a.amplitudes().dot(b.amplitudes()));
}

}  // namespace optport
