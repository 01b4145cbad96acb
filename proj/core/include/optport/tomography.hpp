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

// Pauli-setting state tomography by linear inversion, Uhlmann fidelity, and a
// minimal noise model (per-gate depolarizing, per-bit readout flips).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "optport/gates.hpp"
#include "optport/qcore.hpp"

namespace optport::tomography {

/// Length-n string over {X, Y, Z}; letter i is measured on qubit i.
struct PauliSetting {
    std::string letters;

    explicit PauliSetting(std::string letters);
    std::size_t n_qubits() const { return letters.size(); }
    auto operator<=>(const PauliSetting&) const = default;
};

/// All 3^n settings, lexicographic with X < Y < Z.
std::vector<PauliSetting> settings_for(int n);

struct CountsTable {
    PauliSetting setting;
    std::int64_t shots = 0;
    /// Bitstring (qubit 0 first) -> count. Bit 0 means eigenvalue +1.
    std::map<std::string, std::int64_t> counts;

    /// Throws InvariantViolation unless counts are nonnegative, sum to shots, and
    /// every key has n_qubits bits.
    void validate() const;
};

struct NoiseSpec {
    double depolarizing_p = 0.0;
    double readout_flip = 0.0;

    void validate() const;
};

/// Born-rule sampling in the setting's eigenbasis, then independent readout flips.
CountsTable simulate_counts(const DensityMatrix& rho, const PauliSetting& setting, std::int64_t shots,
                            std::uint64_t seed, const std::optional<NoiseSpec>& noise = std::nullopt);

/// One table per setting, seeds derived from (seed, setting index).
std::vector<CountsTable> simulate_all(const DensityMatrix& rho, std::int64_t shots, std::uint64_t seed,
                                      const std::optional<NoiseSpec>& noise = std::nullopt);

/// Pauli string over {I, X, Y, Z} -> expectation value.
using Expectations = std::map<std::string, double>;

/// Tr(rho P) for all 4^n Pauli strings.
Expectations exact_expectations(const DensityMatrix& rho);

/// Estimates every Pauli expectation from counts; identity-containing strings use the
/// shot-weighted average over all covering settings.
Expectations estimate_expectations(const std::vector<CountsTable>& tables);

/// rho = 2^-n sum_P <P> P. Hermitian, unit trace; not projected onto PSD.
DensityMatrix reconstruct_from_expectations(const Expectations& expectations, int n_qubits);

/// Linear inversion from a complete set of 3^n counts tables.
DensityMatrix reconstruct(const std::vector<CountsTable>& tables);

/// Dense matrix of a Pauli string such as "XIZ".
CMatrix pauli_matrix(const std::string& letters);

/// F = Tr sqrt(sqrt(r1) r2 sqrt(r1)). Negative eigenvalues are clipped to 0.
/// Throws InvariantViolation on a non-Hermitian input (defect > 1e-8).
double fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2);

double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

/// Evolves rho through the circuit; after every gate each touched qubit q goes through
/// rho -> (1-p) rho + p (Tr_q rho) ⊗ I/2.
DensityMatrix evolve(const gates::Circuit& circuit, const DensityMatrix& rho, double depolarizing_p = 0.0);

struct Fixtures {
    DensityMatrix rho_theory;
    DensityMatrix rho_prime;
    DensityMatrix rho_double_prime;
};

/// rho_theory from gates::prep_paper_state() with the global phase stripped;
/// rho_prime / rho_double_prime loaded verbatim from `data_dir`/fixtures.
Fixtures paper_fixtures(const std::string& data_dir);

}  // namespace optport::tomography
