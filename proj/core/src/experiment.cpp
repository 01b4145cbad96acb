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

#include "optport/experiment.hpp"

#include <sstream>

#include "optport/io.hpp"

namespace optport::experiment {

namespace {

DensityMatrix tomograph(const DensityMatrix& rho, const Config& config, std::uint64_t stream) {
    if (config.analytic) {
        return tomography::reconstruct_from_expectations(tomography::exact_expectations(rho), rho.n_qubits());
    }
    const tomography::NoiseSpec readout{0.0, config.noise.readout_flip};
    return tomography::reconstruct(tomography::simulate_all(rho, config.shots, mix_seed(config.seed, stream), readout));
}

void write_matrix(std::ostringstream& out, const std::string& name, const CMatrix& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            out << name << ',' << r << ',' << c << ',' << m(r, c).real() << ',' << m(r, c).imag() << '\n';
        }
    }
}

}  // namespace

gates::Circuit preparation_circuit(const std::optional<gates::Circuit>& prep) {
    if (prep && prep->n_qubits() != 2) throw std::invalid_argument("preparation circuit must act on 2 qubits");
    gates::Circuit c(4);
    c.append(prep ? *prep : gates::prep_circuit());
    return c;
}

gates::Circuit full_circuit(const std::optional<gates::Circuit>& prep) {
    gates::Circuit c = preparation_circuit(prep);
    c.append(gates::two_qubit_compression_circuit());
    c.append(gates::coherent_teleport_circuit());
    // U^dagger on (q0, q3): the compression circuit is its own inverse.
    c.cnot(3, 0).h(3).cnot(3, 0);
    return c;
}

Report run(const Config& config) {
    if (config.shots <= 0) throw std::invalid_argument("shots must be positive");
    config.noise.validate();

    Report report;
    report.config = config;
    const std::string data = config.data_dir.empty() ? io::data_dir() : config.data_dir;
    report.config.data_dir = data;

    const DensityMatrix ground = DensityMatrix::from_pure(StateVector(4));
    const double p = config.noise.depolarizing_p;
    const DensityMatrix after_prep = tomography::evolve(preparation_circuit(config.preparation), ground, p);
    const DensityMatrix after_all = tomography::evolve(full_circuit(config.preparation), ground, p);

    report.theory = DensityMatrix::from_pure(config.preparation ? gates::apply(*config.preparation, StateVector(2))
                                                                : gates::prep_paper_state());
    report.prepared = tomograph(partial_trace(after_prep, {0, 1}), config, 1);
    report.teleported = tomograph(partial_trace(after_all, {0, 3}), config, 2);

    report.theory_vs_prepared = tomography::fidelity(report.theory, report.prepared);
    report.theory_vs_teleported = tomography::fidelity(report.theory, report.teleported);
    report.prepared_vs_teleported = tomography::fidelity(report.prepared, report.teleported);

    if (config.with_fixtures) {
        report.fixtures = tomography::paper_fixtures(data);
        const auto& f = *report.fixtures;
        report.fixture_fidelities = FixtureComparison{
            tomography::fidelity(f.rho_theory, f.rho_prime),
            tomography::fidelity(f.rho_theory, f.rho_double_prime),
            tomography::fidelity(f.rho_prime, f.rho_double_prime),
        };
    }
    return report;
}

nlohmann::json to_json(const Report& report) {
    using nlohmann::json;
    const auto& c = report.config;
    json out = {
        {"config",
         {{"shots", c.shots},
          {"seed", c.seed},
          {"analytic", c.analytic},
          {"depolarizing_p", c.noise.depolarizing_p},
          {"readout_flip", c.noise.readout_flip}}},
        {"circuit", gates::to_text(full_circuit(c.preparation))},
        {"fidelities",
         {{"theory_vs_prepared", report.theory_vs_prepared},
          {"theory_vs_teleported", report.theory_vs_teleported},
          {"prepared_vs_teleported", report.prepared_vs_teleported}}},
        {"density_matrices",
         {{"theory", io::to_json(report.theory)},
          {"prepared", io::to_json(report.prepared)},
          {"teleported", io::to_json(report.teleported)}}},
    };
    if (report.fixture_fidelities) {
        const auto& f = *report.fixture_fidelities;
        out["fixtures"] = {
            {"theory_vs_rho_prime", f.theory_vs_prime},
            {"theory_vs_rho_double_prime", f.theory_vs_double_prime},
            {"rho_prime_vs_rho_double_prime", f.prime_vs_double_prime},
            {"reported_theory_vs_rho_prime", kReportedPreparedFidelity},
            {"reported_theory_vs_rho_double_prime", kReportedTeleportedFidelity},
        };
    }
    return out;
}

std::string to_csv(const Report& report) {
    std::ostringstream out;
    out.precision(17);
    out << "matrix,row,col,re,im\n";
    write_matrix(out, "theory", report.theory.entries());
    write_matrix(out, "prepared", report.prepared.entries());
    write_matrix(out, "teleported", report.teleported.entries());
    if (report.fixtures) {
        write_matrix(out, "rho_prime", report.fixtures->rho_prime.entries());
        write_matrix(out, "rho_double_prime", report.fixtures->rho_double_prime.entries());
    }
    return out.str();
}

}  // namespace optport::experiment
