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

#include "commands.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "optport/compiler.hpp"
#include "optport/experiment.hpp"
#include "optport/io.hpp"
#include "optport/teleport.hpp"
#include "optport/tomography.hpp"

namespace optport::cli {

namespace {

using nlohmann::json;

struct OutputOptions {
    std::string out;
    std::string format = "json";
};

void add_output_flags(CLI::App* cmd, OutputOptions& o) {
    cmd->add_option("--out", o.out, "Write the primary output to this file instead of stdout");
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
}

void emit(const OutputOptions& o, const std::string& text, std::ostream& out) {
    if (o.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw ParseError("cannot write " + o.out);
    f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string table_csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream s;
    for (std::size_t i = 0; i < header.size(); ++i) s << (i ? "," : "") << header[i];
    s << "\n";
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) s << (i ? "," : "") << r[i];
        s << "\n";
    }
    return s.str();
}

std::string num(double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

std::string join(const std::vector<std::string>& v, char sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? std::string(1, sep) : "") + v[i];
    return s;
}

// ---------------------------------------------------------------------------

struct CompileArgs {
    std::string state;
    bool dump_unitary = false;
    OutputOptions output;
};

int cmd_compile(const CompileArgs& a, std::ostream& out, std::ostream& err) {
    const auto state = io::load_sparse_state(a.state);
    const auto plan = compiler::build_plan(state);
    if (plan.m_prime == 0) {
        err << "notice: state has a single nonzero term; no Bell pairs are needed, Bob rebuilds it from the plan\n";
    }
    if (a.output.format == "csv") {
        std::vector<std::vector<std::string>> rows;
        for (std::size_t i = 0; i < plan.m; ++i) {
            rows.push_back({std::to_string(i), std::to_string(plan.targets[i]),
                            io::to_json(plan, false)["targets"][i]["target_bits"].get<std::string>()});
        }
        emit(a.output, table_csv({"term", "target", "target_bits"}, rows), out);
        return kOk;
    }
    json j = io::to_json(plan, a.dump_unitary);
    if (plan.m_prime == 0) j["notice"] = "single nonzero term: no entanglement required";
    emit(a.output, dump(j), out);
    return kOk;
}

// ---------------------------------------------------------------------------

struct TeleportArgs {
    std::string state;
    std::string reverse_state;
    std::string mode = "exhaustive";
    std::uint64_t seed = 0;
    bool controlled = false;
    bool withhold = false;
    bool alice_first = false;
    OutputOptions output;
};

std::string transcript_csv(const std::vector<const teleport::Transcript*>& ts) {
    std::vector<std::vector<std::string>> rows;
    for (const auto* t : ts) {
        for (const auto& b : t->branches) {
            rows.push_back({t->protocol, join(b.alice, ' '), join(b.charlie, ' '), num(b.probability), num(b.fidelity)});
        }
    }
    return table_csv({"protocol", "alice", "charlie", "probability", "fidelity"}, rows);
}

int cmd_teleport(const TeleportArgs& a, std::ostream& out) {
    const auto state = io::load_sparse_state(a.state);
    const teleport::Mode mode =
        a.mode == "sampled" ? teleport::Mode::sampled(a.seed) : teleport::Mode::exhaustive();
    const teleport::ControlOptions control{!a.withhold, a.alice_first};

    if (!a.reverse_state.empty()) {
        const auto back = io::load_sparse_state(a.reverse_state);
        const auto bt = teleport::bidirectional_teleport(state, back, a.controlled, mode, control);
        if (a.output.format == "csv") {
            emit(a.output, transcript_csv({&bt.alice_to_bob, &bt.bob_to_alice}), out);
        } else {
            emit(a.output,
                 dump({{"ebits", bt.ebits_total()},
                       {"alice_to_bob", io::to_json(bt.alice_to_bob)},
                       {"bob_to_alice", io::to_json(bt.bob_to_alice)}}),
                 out);
        }
        return kOk;
    }
    const auto t = a.controlled ? teleport::controlled_teleport(state, mode, control)
                                : teleport::run_optimal_teleport(state, mode);
    emit(a.output, a.output.format == "csv" ? transcript_csv({&t}) : dump(io::to_json(t)), out);
    return kOk;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
    std::string table;
    OutputOptions output;
};

int cmd_verify_table1(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
    const std::string path = a.table.empty() ? io::data_dir() + "/table1.json" : a.table;
    const auto rows = io::load_table1(path);
    json report = json::array();
    std::vector<std::vector<std::string>> csv;
    bool all_pass = true;
    for (const auto& row : rows) {
        json r = {{"row", row.row}, {"state", row.label}, {"channel", row.channel},
                  {"claimed_bell_pairs", row.bell_pairs}};
        std::string verdict;
        try {
            const auto v = compiler::verify_claimed_unitary(row.state, row.claimed, row.bell_pairs);
            const auto t = teleport::run_optimal_teleport(row.state, teleport::Mode::exhaustive());
            r["verification"] = io::to_json(v);
            r["ebits_consumed"] = t.ebits;
            r["teleport_fidelity"] = t.min_fidelity;
            const bool ok = v.passed() && t.ebits == row.bell_pairs;
            verdict = ok ? "PASS" : "FAIL";
            if (!v.unitary) verdict += " non-unitary";
            if (!v.compresses) verdict += " non-compressing";
            if (!v.count_matches || t.ebits != row.bell_pairs) verdict += " count-mismatch";
        } catch (const compiler::MalformedClaim& e) {
            verdict = "FAIL non-bijective";
            r["error"] = e.what();
        }
        r["verdict"] = verdict;
        all_pass = all_pass && verdict == "PASS";
        err << "row " << row.row << ": " << verdict << "\n";
        csv.push_back({std::to_string(row.row), std::to_string(row.bell_pairs),
                       r.contains("ebits_consumed") ? std::to_string(r["ebits_consumed"].get<int>()) : "",
                       verdict});
        report.push_back(std::move(r));
    }
    if (a.output.format == "csv") {
        emit(a.output, table_csv({"row", "claimed_bell_pairs", "ebits_consumed", "verdict"}, csv), out);
    } else {
        emit(a.output, dump({{"rows", report}, {"all_passed", all_pass}}), out);
    }
    return all_pass ? kOk : kVerificationFailure;
}

// ---------------------------------------------------------------------------

struct ExperimentArgs {
    std::int64_t shots = 8192;
    std::uint64_t seed = 0;
    double noise_p = 0.0;
    double readout_flip = 0.0;
    bool analytic = false;
    bool no_fixtures = false;
    std::string csv;
    std::string prep_circuit;
    OutputOptions output;
};

int cmd_experiment(const ExperimentArgs& a, std::ostream& out) {
    experiment::Config cfg;
    cfg.shots = a.shots;
    cfg.seed = a.seed;
    cfg.noise = {a.noise_p, a.readout_flip};
    cfg.analytic = a.analytic;
    cfg.with_fixtures = !a.no_fixtures;
    if (!a.prep_circuit.empty()) {
        std::ifstream in(a.prep_circuit);
        if (!in) throw ParseError("cannot open " + a.prep_circuit);
        cfg.preparation = gates::parse_circuit(in);
    }
    const auto report = experiment::run(cfg);
    if (!a.csv.empty()) emit(OutputOptions{a.csv, "csv"}, experiment::to_csv(report), out);
    emit(a.output, a.output.format == "csv" ? experiment::to_csv(report) : dump(experiment::to_json(report)), out);
    return kOk;
}

// ---------------------------------------------------------------------------

struct TomoArgs {
    std::string counts;
    std::string reference;
    OutputOptions output;
};

std::string density_csv(const std::string& name, const CMatrix& m) {
    std::vector<std::vector<std::string>> rows;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            rows.push_back({name, std::to_string(r), std::to_string(c), num(m(r, c).real()), num(m(r, c).imag())});
        }
    }
    return table_csv({"matrix", "row", "col", "re", "im"}, rows);
}

int cmd_tomo(const TomoArgs& a, std::ostream& out) {
    const auto tables = io::parse_counts(io::read_json_file(a.counts));
    const auto rho = tomography::reconstruct(tables);
    if (a.output.format == "csv") {
        emit(a.output, density_csv("reconstructed", rho.entries()), out);
        return kOk;
    }
    json j = io::to_json(rho);
    j["min_eigenvalue"] = rho.eigenvalues().minCoeff();
    if (!a.reference.empty()) {
        const auto ref = io::load_density_matrix(a.reference);
        j["fidelity_to_reference"] = tomography::fidelity(ref, rho);
    }
    emit(a.output, dump(j), out);
    return kOk;
}

struct FidelityArgs {
    std::string first;
    std::string second;
    OutputOptions output;
};

int cmd_fidelity(const FidelityArgs& a, std::ostream& out) {
    const auto r1 = io::load_density_matrix(a.first);
    const auto r2 = io::load_density_matrix(a.second);
    const double f = tomography::fidelity(r1, r2);
    if (a.output.format == "csv") {
        emit(a.output, table_csv({"fidelity", "trace_distance"}, {{num(f), num(tomography::trace_distance(r1, r2))}}), out);
    } else {
        emit(a.output, dump({{"fidelity", f}, {"trace_distance", tomography::trace_distance(r1, r2)}}), out);
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"optport: resource-optimal teleportation of sparse multi-qubit states"};
    app.require_subcommand(1);

    CompileArgs compile;
    auto* c = app.add_subcommand("compile", "Build the compression plan for a sparse state file");
    c->add_option("state", compile.state, "SparseState JSON file")->required();
    c->add_flag("--dump-unitary", compile.dump_unitary, "Include the full compression unitary");
    add_output_flags(c, compile.output);

    TeleportArgs tele;
    auto* t = app.add_subcommand("teleport", "Run the optimal teleportation protocol and print its transcript");
    t->add_option("state", tele.state, "SparseState JSON file (Alice -> Bob)")->required();
    t->add_option("--reverse", tele.reverse_state, "Second state sent Bob -> Alice (bidirectional run)");
    t->add_option("--mode", tele.mode, "Branch enumeration")->check(CLI::IsMember({"sampled", "exhaustive"}));
    t->add_option("--seed", tele.seed, "Seed for sampled mode");
    t->add_flag("--controlled", tele.controlled, "Use GHZ channels supervised by Charlie");
    t->add_flag("--withhold", tele.withhold, "Charlie keeps his outcomes (controlled runs only)");
    t->add_flag("--alice-first", tele.alice_first, "Alice measures before Charlie");
    add_output_flags(t, tele.output);

    VerifyArgs verify;
    auto* v = app.add_subcommand("verify-table1", "Check every bundled published compression map");
    v->add_option("--table", verify.table, "Alternative table file");
    add_output_flags(v, verify.output);

    ExperimentArgs exp;
    auto* e = app.add_subcommand("experiment", "Simulate the two-qubit hardware run with tomography");
    e->add_option("--shots", exp.shots, "Shots per Pauli setting")->check(CLI::PositiveNumber);
    e->add_option("--seed", exp.seed, "Sampling seed");
    e->add_option("--noise-p", exp.noise_p, "Depolarizing probability per gate")->check(CLI::Range(0.0, 1.0));
    e->add_option("--readout-flip", exp.readout_flip, "Readout bit-flip probability")->check(CLI::Range(0.0, 1.0));
    e->add_flag("--analytic", exp.analytic, "Use exact expectations instead of sampled counts");
    e->add_flag("--no-fixtures", exp.no_fixtures, "Skip comparison with the bundled hardware matrices");
    e->add_option("--csv", exp.csv, "Also write the density-matrix CSV to this file");
    e->add_option("--prep-circuit", exp.prep_circuit, "Two-qubit circuit file replacing the built-in preparation");
    add_output_flags(e, exp.output);

    TomoArgs tomo;
    auto* tm = app.add_subcommand("tomo", "Reconstruct a density matrix from Pauli-setting counts");
    tm->add_option("counts", tomo.counts, "Counts JSON file")->required();
    tm->add_option("--reference", tomo.reference, "Density matrix to compare against");
    add_output_flags(tm, tomo.output);

    FidelityArgs fid;
    auto* f = app.add_subcommand("fidelity", "Uhlmann fidelity between two density-matrix files");
    f->add_option("rho1", fid.first, "First density matrix")->required();
    f->add_option("rho2", fid.second, "Second density matrix")->required();
    add_output_flags(f, fid.output);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& ex) {
        const int code = app.exit(ex, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (c->parsed()) return cmd_compile(compile, out, err);
        if (t->parsed()) return cmd_teleport(tele, out);
        if (v->parsed()) return cmd_verify_table1(verify, out, err);
        if (e->parsed()) return cmd_experiment(exp, out);
        if (tm->parsed()) return cmd_tomo(tomo, out);
        if (f->parsed()) return cmd_fidelity(fid, out);
    } catch (const InvariantViolation& ex) {
        err << "invariant violation: " << ex.what() << "\n";
        return kInvariantViolation;
    } catch (const ParseError& ex) {
        err << "input error: " << ex.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument& ex) {
        err << "input error: " << ex.what() << "\n";
        return kInputError;
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
        return kUnexpected;
    }
    return kInputError;
}

}  // namespace optport::cli
