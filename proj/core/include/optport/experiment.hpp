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

// End-to-end replication of the two-qubit hardware run: prepare the state on (q0,q1),
// compress it onto q1, teleport q1 -> q3 coherently, decompress on (q0,q3), and
// tomograph both the prepared and the teleported register.

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "optport/gates.hpp"
#include "optport/tomography.hpp"

namespace optport::experiment {

/// Fidelities printed for the hardware run; F(theory, rho') and F(theory, rho'').
inline constexpr double kReportedPreparedFidelity = 0.9221;
inline constexpr double kReportedTeleportedFidelity = 0.9378;

struct Config {
    std::int64_t shots = 8192;
    std::uint64_t seed = 0;
    tomography::NoiseSpec noise{};
    /// Feed exact Pauli expectations to the reconstruction instead of sampled counts.
    bool analytic = false;
    /// Also compare against the bundled hardware matrices.
    bool with_fixtures = true;
    std::string data_dir;
    /// Two-qubit circuit replacing the preparation stage; its output on |00> becomes the theory state.
    std::optional<gates::Circuit> preparation;
};

/// Preparation, compression, coherent teleport and decompression on q0..q3.
/// `prep`, if given, must act on 2 qubits and replaces the preparation stage.
gates::Circuit full_circuit(const std::optional<gates::Circuit>& prep = std::nullopt);
/// Preparation stage only (q0,q1), widened to 4 qubits.
gates::Circuit preparation_circuit(const std::optional<gates::Circuit>& prep = std::nullopt);

struct FixtureComparison {
    double theory_vs_prime = 0.0;
    double theory_vs_double_prime = 0.0;
    double prime_vs_double_prime = 0.0;
};

struct Report {
    Config config;
    DensityMatrix theory = DensityMatrix::maximally_mixed(2);
    DensityMatrix prepared = DensityMatrix::maximally_mixed(2);
    DensityMatrix teleported = DensityMatrix::maximally_mixed(2);
    double theory_vs_prepared = 0.0;
    double theory_vs_teleported = 0.0;
    double prepared_vs_teleported = 0.0;
    std::optional<tomography::Fixtures> fixtures;
    std::optional<FixtureComparison> fixture_fidelities;
};

Report run(const Config& config);

nlohmann::json to_json(const Report& report);
/// One line per matrix entry: matrix,row,col,re,im.
std::string to_csv(const Report& report);

}  // namespace optport::experiment
