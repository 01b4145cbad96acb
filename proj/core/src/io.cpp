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

#include "optport/io.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

namespace optport::io {

namespace {

template <typename F>
auto guarded(const std::string& what, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw ParseError(what + ": " + e.what());
    }
}

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    return j.at(key);
}

int parse_int(const json& j, const char* what) {
    if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
    return j.get<int>();
}

std::string bits_of(std::size_t value, int width) {
    std::string s;
    for (int b : unpack_bits(value, static_cast<std::size_t>(width))) s.push_back(b ? '1' : '0');
    return s;
}

}  // namespace

std::string data_dir() {
    if (const char* env = std::getenv(kDataDirEnv); env && *env) return env;
    if (std::filesystem::exists(OPTPORT_DEFAULT_DATA_DIR)) return OPTPORT_DEFAULT_DATA_DIR;
    return OPTPORT_INSTALLED_DATA_DIR;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

Complex parse_complex(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ParseError("complex number must be [real, imaginary], got " + j.dump());
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

json complex_to_json(Complex c) { return json::array({c.real(), c.imag()}); }

compiler::SparseState parse_sparse_state(const json& j) {
    return guarded("state", [&] {
        const int n = parse_int(field(j, "n_qubits"), "n_qubits");
        if (n < 0 || n > 16) throw ParseError("n_qubits must be in [0, 16]");
        const json& terms = field(j, "terms");
        if (!terms.is_array()) throw ParseError("terms must be an array");
        std::vector<compiler::Term> out;
        for (const auto& t : terms) {
            const Complex amp = parse_complex(field(t, "amplitude"));
            const json& v = field(t, "vector");
            if (v.is_number_integer()) {
                const auto index = v.get<long long>();
                if (index < 0) throw ParseError("term index must be nonnegative");
                out.push_back({amp, static_cast<std::size_t>(index)});
            } else if (v.is_array()) {
                CVector dense(static_cast<Eigen::Index>(v.size()));
                for (std::size_t i = 0; i < v.size(); ++i) dense[static_cast<Eigen::Index>(i)] = parse_complex(v[i]);
                out.push_back({amp, std::move(dense)});
            } else {
                throw ParseError("term vector must be an index or a list of [re, im] pairs");
            }
        }
        return compiler::SparseState(n, std::move(out));
    });
}

compiler::SparseState load_sparse_state(const std::string& path) { return parse_sparse_state(read_json_file(path)); }

json to_json(const compiler::SparseState& state) {
    json terms = json::array();
    for (const auto& t : state.terms()) {
        json v;
        if (const auto* index = std::get_if<std::size_t>(&t.vector)) {
            v = *index;
        } else {
            v = json::array();
            const auto& dense = std::get<CVector>(t.vector);
            for (Eigen::Index i = 0; i < dense.size(); ++i) v.push_back(complex_to_json(dense[i]));
        }
        terms.push_back({{"amplitude", complex_to_json(t.amplitude)}, {"vector", v}});
    }
    return {{"n_qubits", state.n_qubits()}, {"terms", terms}};
}

CMatrix parse_matrix(const json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("matrix must be a nonempty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    CMatrix m(rows, rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows) throw ParseError("matrix must be square");
        for (Eigen::Index c = 0; c < rows; ++c) m(r, c) = parse_complex(row[static_cast<std::size_t>(c)]);
    }
    return m;
}

json matrix_to_json(const CMatrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

DensityMatrix parse_density_matrix(const json& j, double psd_slack) {
    CMatrix m = guarded("density matrix", [&] { return parse_matrix(field(j, "entries")); });
    if (j.contains("n_qubits") && dim_of(parse_int(j.at("n_qubits"), "n_qubits")) != static_cast<std::size_t>(m.rows())) {
        throw ParseError("n_qubits does not match matrix size");
    }
    return DensityMatrix::from_matrix(std::move(m), psd_slack);
}

DensityMatrix load_density_matrix(const std::string& path, double psd_slack) {
    return parse_density_matrix(read_json_file(path), psd_slack);
}

json to_json(const DensityMatrix& rho) {
    return {{"n_qubits", rho.n_qubits()}, {"entries", matrix_to_json(rho.entries())}};
}

std::vector<tomography::CountsTable> parse_counts(const json& j) {
    return guarded("counts", [&] {
        const json& tables = j.is_array() ? j : field(j, "tables");
        if (!tables.is_array()) throw ParseError("tables must be an array");
        std::vector<tomography::CountsTable> out;
        for (const auto& t : tables) {
            const json& setting = field(t, "setting");
            if (!setting.is_string()) throw ParseError("setting must be a string");
            tomography::CountsTable table{tomography::PauliSetting(setting.get<std::string>()), 0, {}};
            const json& shots = field(t, "shots");
            if (!shots.is_number_integer()) throw ParseError("shots must be an integer");
            table.shots = shots.get<std::int64_t>();
            const json& counts = field(t, "counts");
            if (!counts.is_object()) throw ParseError("counts must be an object");
            for (const auto& [bits, count] : counts.items()) {
                if (!count.is_number_integer()) throw ParseError("count for " + bits + " must be an integer");
                table.counts[bits] = count.get<std::int64_t>();
            }
            out.push_back(std::move(table));
        }
        return out;
    });
}

json to_json(const std::vector<tomography::CountsTable>& tables) {
    json arr = json::array();
    for (const auto& t : tables) {
        json counts = json::object();
        for (const auto& [bits, c] : t.counts) counts[bits] = c;
        arr.push_back({{"setting", t.setting.letters}, {"shots", t.shots}, {"counts", counts}});
    }
    const int n = tables.empty() ? 0 : static_cast<int>(tables.front().setting.n_qubits());
    return {{"n_qubits", n}, {"tables", arr}};
}

json to_json(const compiler::CompressionPlan& plan, bool include_unitary) {
    json targets = json::array();
    for (std::size_t i = 0; i < plan.m; ++i) {
        targets.push_back({{"term", i}, {"target", plan.targets[i]}, {"target_bits", bits_of(plan.targets[i], plan.n_qubits)}});
    }
    json out = {
        {"n_qubits", plan.n_qubits},
        {"m", plan.m},
        {"m_prime", plan.m_prime},
        {"ebits", plan.m_prime},
        {"unitary_dim", plan.unitary.dim()},
        {"targets", targets},
    };
    if (include_unitary) out["unitary"] = matrix_to_json(plan.unitary.entries());
    return out;
}

json to_json(const teleport::Transcript& t) {
    json outcomes = json::array();
    for (const auto& b : t.branches) {
        outcomes.push_back({{"alice", b.alice}, {"charlie", b.charlie}, {"probability", b.probability}, {"fidelity", b.fidelity}});
    }
    return {
        {"protocol", t.protocol},
        {"n_qubits", t.n_qubits},
        {"m", t.m},
        {"m_prime", t.m_prime},
        {"ebits", t.ebits},
        {"classical_bits", t.classical_bits()},
        {"alice_bits", t.alice_bits},
        {"charlie_bits", t.charlie_bits},
        {"controlled", t.controlled},
        {"disclosed", t.disclosed},
        {"branch_count", t.branch_count()},
        {"fidelity", t.fidelity},
        {"min_fidelity", t.min_fidelity},
        {"outcomes", outcomes},
    };
}

json to_json(const compiler::VerificationReport& r) {
    json out = {
        {"unitary", r.unitary},
        {"unitarity_defect", r.unitarity_defect},
        {"normalized_sources", r.normalized_sources},
        {"compresses", r.compresses},
        {"m", r.m},
        {"optimal_bell_pairs", r.optimal_bell_pairs},
        {"implied_bell_pairs", r.implied_bell_pairs},
        {"count_matches", r.count_matches},
        {"passed", r.passed()},
    };
    out["claimed_bell_pairs"] = r.claimed_bell_pairs ? json(*r.claimed_bell_pairs) : json(nullptr);
    return out;
}

std::vector<Table1Row> parse_table1(const json& j) {
    return guarded("table1", [&] {
        const json& rows = field(j, "rows");
        if (!rows.is_array()) throw ParseError("rows must be an array");
        std::vector<Table1Row> out;
        for (const auto& r : rows) {
            compiler::ClaimedMap claim;
            claim.n_qubits = parse_int(field(r, "n_qubits"), "n_qubits");
            for (const auto& term : field(r, "claimed_unitary")) {
                compiler::ClaimedTerm ct;
                ct.target = static_cast<std::size_t>(parse_int(field(term, "target"), "target"));
                for (const auto& s : field(term, "source")) {
                    if (!s.is_array() || s.size() != 2) throw ParseError("source entry must be [index, coefficient]");
                    ct.source.emplace_back(static_cast<std::size_t>(parse_int(s[0], "source index")), parse_complex(s[1]));
                }
                claim.terms.push_back(std::move(ct));
            }
            out.push_back(Table1Row{
                parse_int(field(r, "row"), "row"),
                field(r, "state_label").get<std::string>(),
                field(r, "channel").get<std::string>(),
                parse_int(field(r, "bell_pairs"), "bell_pairs"),
                parse_sparse_state(field(r, "state")),
                std::move(claim),
            });
        }
        return out;
    });
}

std::vector<Table1Row> load_table1(const std::string& path) { return parse_table1(read_json_file(path)); }

}  // namespace optport::io
