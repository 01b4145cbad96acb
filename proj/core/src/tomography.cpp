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

#include "optport/tomography.hpp"

#include <algorithm>
#include <cmath>

#include "optport/io.hpp"

namespace optport::tomography {

namespace {

constexpr double kHermitianInput = 1e-8;
constexpr double kPureThreshold = 1e-9;

std::size_t ipow(std::size_t base, int exp) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

void check_hermitian(const DensityMatrix& rho, const char* which) {
    const double defect = (rho.entries() - rho.entries().adjoint()).cwiseAbs().maxCoeff();
    if (defect > kHermitianInput) {
        throw InvariantViolation(std::string("fidelity: ") + which + " is not Hermitian");
    }
}

/// Returns the dominant eigenvector if rho is numerically pure.
std::optional<CVector> pure_vector(const Eigen::SelfAdjointEigenSolver<CMatrix>& solver) {
    const auto& evals = solver.eigenvalues();
    const Eigen::Index top = evals.size() - 1;
    if (evals[top] >= 1.0 - kPureThreshold) return CVector(solver.eigenvectors().col(top));
    return std::nullopt;
}

CMatrix psd_sqrt(const Eigen::SelfAdjointEigenSolver<CMatrix>& solver) {
    const Eigen::VectorXd roots = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return solver.eigenvectors() * roots.asDiagonal() * solver.eigenvectors().adjoint();
}

CMatrix depolarize_qubit(const CMatrix& rho, int n_qubits, int q, double p) {
    if (p == 0.0) return rho;
    // (Tr_q rho) ⊗ I/2 equals the average of rho under the four Paulis on q.
    CMatrix twirl = rho;
    const char* letters = "XYZ";
    for (int i = 0; i < 3; ++i) {
        std::string s(static_cast<std::size_t>(n_qubits), 'I');
        s[static_cast<std::size_t>(q)] = letters[i];
        const CMatrix pm = pauli_matrix(s);
        twirl += pm * rho * pm;
    }
    twirl /= 4.0;
    return (1.0 - p) * rho + p * twirl;
}

CMatrix apply_gate(const CMatrix& rho, int n_qubits, const gates::Gate& g) {
    CMatrix left(rho.rows(), rho.cols());
    const CMatrix m = g.matrix();
    for (Eigen::Index c = 0; c < rho.cols(); ++c) left.col(c) = apply_local(rho.col(c), n_qubits, g.targets, m);
    // G rho G^dagger = (G (G rho)^dagger)^dagger.
    const CMatrix left_adj = left.adjoint();
    CMatrix out(rho.rows(), rho.cols());
    for (Eigen::Index c = 0; c < rho.cols(); ++c) out.col(c) = apply_local(left_adj.col(c), n_qubits, g.targets, m);
    return out.adjoint();
}

}  // namespace

PauliSetting::PauliSetting(std::string l) : letters(std::move(l)) {
    if (letters.empty()) throw std::invalid_argument("Pauli setting must cover at least one qubit");
    for (char c : letters) {
        if (c != 'X' && c != 'Y' && c != 'Z') {
            throw std::invalid_argument("Pauli setting '" + letters + "' may only contain X, Y, Z");
        }
    }
}

std::vector<PauliSetting> settings_for(int n) {
    if (n <= 0) throw std::invalid_argument("settings_for: n must be positive");
    static constexpr char kLetters[] = {'X', 'Y', 'Z'};
    const std::size_t total = ipow(3, n);
    std::vector<PauliSetting> out;
    out.reserve(total);
    for (std::size_t k = 0; k < total; ++k) {
        std::string s(static_cast<std::size_t>(n), 'X');
        std::size_t v = k;
        for (int i = n - 1; i >= 0; --i) {
            s[static_cast<std::size_t>(i)] = kLetters[v % 3];
            v /= 3;
        }
        out.emplace_back(std::move(s));
    }
    return out;
}

void CountsTable::validate() const {
    if (shots <= 0) throw InvariantViolation("counts table for " + setting.letters + " has no shots");
    std::int64_t total = 0;
    for (const auto& [bits, count] : counts) {
        if (bits.size() != setting.n_qubits() || bits.find_first_not_of("01") != std::string::npos) {
            throw InvariantViolation("bitstring '" + bits + "' does not match setting " + setting.letters);
        }
        if (count < 0) throw InvariantViolation("negative count for " + bits);
        total += count;
    }
    if (total != shots) {
        throw InvariantViolation("counts for " + setting.letters + " sum to " + std::to_string(total) + ", not " +
                                 std::to_string(shots));
    }
}

void NoiseSpec::validate() const {
    if (!(depolarizing_p >= 0.0 && depolarizing_p <= 1.0)) {
        throw std::invalid_argument("depolarizing probability must lie in [0, 1]");
    }
    if (!(readout_flip >= 0.0 && readout_flip <= 1.0)) {
        throw std::invalid_argument("readout flip probability must lie in [0, 1]");
    }
}

CountsTable simulate_counts(const DensityMatrix& rho, const PauliSetting& setting, std::int64_t shots,
                            std::uint64_t seed, const std::optional<NoiseSpec>& noise) {
    if (shots <= 0) throw std::invalid_argument("simulate_counts: shots must be positive");
    if (static_cast<int>(setting.n_qubits()) != rho.n_qubits()) {
        throw std::invalid_argument("setting " + setting.letters + " does not match a " +
                                    std::to_string(rho.n_qubits()) + "-qubit state");
    }
    if (noise) noise->validate();
    const std::size_t n = setting.n_qubits();
    const CMatrix basis = MeasurementBasis::pauli(setting.letters).vectors(n);
    const std::size_t d = rho.dim();
    std::vector<double> cdf(d);
    double acc = 0.0;
    for (std::size_t o = 0; o < d; ++o) {
        const auto col = basis.col(static_cast<Eigen::Index>(o));
        acc += std::max(0.0, (col.adjoint() * rho.entries() * col)(0, 0).real());
        cdf[o] = acc;
    }
    const double flip = noise ? noise->readout_flip : 0.0;

    std::vector<std::int64_t> tally(d, 0);
    std::uint64_t draw = 0;
    for (std::int64_t s = 0; s < shots; ++s) {
        const double u = uniform01(mix_seed(seed, draw++)) * acc;
        std::size_t o = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        o = std::min(o, d - 1);
        if (flip > 0.0) {
            for (std::size_t b = 0; b < n; ++b) {
                if (uniform01(mix_seed(seed, draw++)) < flip) o ^= std::size_t{1} << (n - 1 - b);
            }
        }
        ++tally[o];
    }
    CountsTable table{setting, shots, {}};
    for (std::size_t o = 0; o < d; ++o) {
        if (tally[o] == 0) continue;
        std::string bits;
        for (int b : unpack_bits(o, n)) bits.push_back(b ? '1' : '0');
        table.counts[bits] = tally[o];
    }
    return table;
}

std::vector<CountsTable> simulate_all(const DensityMatrix& rho, std::int64_t shots, std::uint64_t seed,
                                      const std::optional<NoiseSpec>& noise) {
    std::vector<CountsTable> out;
    std::uint64_t index = 0;
    for (const auto& setting : settings_for(rho.n_qubits())) {
        out.push_back(simulate_counts(rho, setting, shots, mix_seed(seed, 1000 + index++), noise));
    }
    return out;
}

CMatrix pauli_matrix(const std::string& letters) {
    CMatrix out = CMatrix::Identity(1, 1);
    for (char c : letters) {
        CMatrix p(2, 2);
        switch (c) {
            case 'I':
                p << 1, 0, 0, 1;
                break;
            case 'X':
                p << 0, 1, 1, 0;
                break;
            case 'Y':
                p << 0, Complex(0, -1), Complex(0, 1), 0;
                break;
            case 'Z':
                p << 1, 0, 0, -1;
                break;
            default:
                throw std::invalid_argument(std::string("unknown Pauli letter '") + c + "'");
        }
        out = kron(out, p);
    }
    return out;
}

namespace {

std::vector<std::string> all_pauli_strings(int n) {
    static constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};
    const std::size_t total = ipow(4, n);
    std::vector<std::string> out;
    out.reserve(total);
    for (std::size_t k = 0; k < total; ++k) {
        std::string s(static_cast<std::size_t>(n), 'I');
        std::size_t v = k;
        for (int i = n - 1; i >= 0; --i) {
            s[static_cast<std::size_t>(i)] = kLetters[v % 4];
            v /= 4;
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace

Expectations exact_expectations(const DensityMatrix& rho) {
    Expectations out;
    for (const auto& p : all_pauli_strings(rho.n_qubits())) {
        out[p] = (rho.entries() * pauli_matrix(p)).trace().real();
    }
    return out;
}

Expectations estimate_expectations(const std::vector<CountsTable>& tables) {
    if (tables.empty()) throw InvariantViolation("no counts tables supplied");
    const int n = static_cast<int>(tables.front().setting.n_qubits());
    std::map<std::string, const CountsTable*> by_setting;
    for (const auto& t : tables) {
        if (static_cast<int>(t.setting.n_qubits()) != n) {
            throw InvariantViolation("counts tables disagree on qubit count");
        }
        t.validate();
        if (!by_setting.emplace(t.setting.letters, &t).second) {
            throw InvariantViolation("duplicate counts table for setting " + t.setting.letters);
        }
    }
    for (const auto& s : settings_for(n)) {
        if (!by_setting.count(s.letters)) throw InvariantViolation("missing counts for setting " + s.letters);
    }

    Expectations out;
    for (const auto& p : all_pauli_strings(n)) {
        double weighted = 0.0;
        std::int64_t shots = 0;
        for (const auto& [letters, table] : by_setting) {
            bool covers = true;
            for (std::size_t i = 0; i < p.size(); ++i) {
                if (p[i] != 'I' && p[i] != letters[i]) {
                    covers = false;
                    break;
                }
            }
            if (!covers) continue;
            for (const auto& [bits, count] : table->counts) {
                int parity = 0;
                for (std::size_t i = 0; i < p.size(); ++i) {
                    if (p[i] != 'I' && bits[i] == '1') parity ^= 1;
                }
                weighted += parity ? -static_cast<double>(count) : static_cast<double>(count);
            }
            shots += table->shots;
        }
        out[p] = weighted / static_cast<double>(shots);
    }
    return out;
}

DensityMatrix reconstruct_from_expectations(const Expectations& expectations, int n_qubits) {
    const auto d = static_cast<Eigen::Index>(dim_of(n_qubits));
    CMatrix rho = CMatrix::Zero(d, d);
    for (const auto& p : all_pauli_strings(n_qubits)) {
        const auto it = expectations.find(p);
        if (it == expectations.end()) throw InvariantViolation("missing expectation for " + p);
        rho += it->second * pauli_matrix(p);
    }
    rho /= static_cast<double>(d);
    return DensityMatrix::from_matrix(std::move(rho), -1.0);
}

DensityMatrix reconstruct(const std::vector<CountsTable>& tables) {
    const Expectations e = estimate_expectations(tables);
    return reconstruct_from_expectations(e, static_cast<int>(tables.front().setting.n_qubits()));
}

double fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2) {
    if (rho1.dim() != rho2.dim()) throw std::invalid_argument("fidelity: dimensions differ");
    check_hermitian(rho1, "first argument");
    check_hermitian(rho2, "second argument");
    const Eigen::SelfAdjointEigenSolver<CMatrix> s1(rho1.entries());
    if (auto v = pure_vector(s1)) {
        return std::sqrt(std::max(0.0, (v->adjoint() * rho2.entries() * *v)(0, 0).real()));
    }
    const Eigen::SelfAdjointEigenSolver<CMatrix> s2(rho2.entries());
    if (auto v = pure_vector(s2)) {
        return std::sqrt(std::max(0.0, (v->adjoint() * rho1.entries() * *v)(0, 0).real()));
    }
    const CMatrix root = psd_sqrt(s1);
    CMatrix inner = root * rho2.entries() * root;
    inner = 0.5 * (inner + inner.adjoint());
    const Eigen::SelfAdjointEigenSolver<CMatrix> s3(inner, Eigen::EigenvaluesOnly);
    return s3.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("trace_distance: dimensions differ");
    const CMatrix diff = a.entries() - b.entries();
    const Eigen::SelfAdjointEigenSolver<CMatrix> s(0.5 * (diff + diff.adjoint()), Eigen::EigenvaluesOnly);
    return 0.5 * s.eigenvalues().cwiseAbs().sum();
}

DensityMatrix evolve(const gates::Circuit& circuit, const DensityMatrix& rho, double depolarizing_p) {
    if (circuit.n_qubits() != rho.n_qubits()) throw std::invalid_argument("evolve: circuit/state size mismatch");
    if (!(depolarizing_p >= 0.0 && depolarizing_p <= 1.0)) {
        throw std::invalid_argument("depolarizing probability must lie in [0, 1]");
    }
    CMatrix m = rho.entries();
    const int n = rho.n_qubits();
    for (const auto& g : circuit.gates()) {
        m = apply_gate(m, n, g);
        for (int q : g.targets) m = depolarize_qubit(m, n, q, depolarizing_p);
    }
    return DensityMatrix::from_matrix(std::move(m));
}

Fixtures paper_fixtures(const std::string& data_dir) {
    const StateVector prepared = gates::prep_paper_state();
    // Strip the global phase: make the amplitude at |00> real and positive.
    const Complex a0 = prepared[0];
    const StateVector psi = StateVector::normalized(prepared.amplitudes() * (std::conj(a0) / std::abs(a0)));
    return Fixtures{
        DensityMatrix::from_pure(psi),
        io::load_density_matrix(data_dir + "/fixtures/rho_prime.json", tol::kPsdFixture),
        io::load_density_matrix(data_dir + "/fixtures/rho_double_prime.json", tol::kPsdFixture),
    };
}

}  // namespace optport::tomography
