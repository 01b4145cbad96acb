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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "optport/io.hpp"

namespace optport::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct CliRun {
    int code;
    std::string out;
    std::string err;
    json parsed() const { return json::parse(out); }
};

CliRun run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& rel) { return io::data_dir() + "/" + rel; }

class TempDir {
   public:
    TempDir() : path_(fs::temp_directory_path() / ("optport_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++))) {
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string& name, const std::string& contents) const {
        const fs::path p = path_ / name;
        std::ofstream(p) << contents;
        return p.string();
    }
    std::string path(const std::string& name) const { return (path_ / name).string(); }

   private:
    static inline int counter_ = 0;
    fs::path path_;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

void expect_fields(const json& j, std::initializer_list<std::pair<const char*, json::value_t>> fields) {
    for (const auto& [key, type] : fields) {
        ASSERT_TRUE(j.contains(key)) << "missing " << key;
        if (type == json::value_t::number_float) {
            EXPECT_TRUE(j.at(key).is_number()) << key;
        } else if (type == json::value_t::number_unsigned) {
            EXPECT_TRUE(j.at(key).is_number_integer()) << key;
        } else {
            EXPECT_EQ(j.at(key).type(), type) << key;
        }
    }
}

void expect_transcript(const json& t) {
    using vt = json::value_t;
    expect_fields(t, {{"protocol", vt::string},
                      {"m", vt::number_unsigned},
                      {"m_prime", vt::number_unsigned},
                      {"ebits", vt::number_unsigned},
                      {"classical_bits", vt::number_unsigned},
                      {"branch_count", vt::number_unsigned},
                      {"fidelity", vt::number_float},
                      {"outcomes", vt::array}});
    EXPECT_EQ(t.at("outcomes").size(), t.at("branch_count").get<std::size_t>());
    for (const auto& o : t.at("outcomes")) {
        expect_fields(o, {{"alice", vt::array}, {"charlie", vt::array}, {"probability", vt::number_float},
                          {"fidelity", vt::number_float}});
    }
}

TEST(Cli, NoArgumentsIsInputError) { EXPECT_EQ(run_cli({}).code, kInputError); }

TEST(Cli, UnknownFlagIsInputError) { EXPECT_EQ(run_cli({"compile", "--bogus", "x"}).code, kInputError); }

TEST(Cli, HelpSucceeds) { EXPECT_EQ(run_cli({"--help"}).code, kOk); }

TEST(Compile, Xi1NeedsOnePair) {
    const CliRun r = run_cli({"compile", data("states/xi1.json")});
    ASSERT_EQ(r.code, kOk) << r.err;
    const json j = r.parsed();
    using vt = json::value_t;
    expect_fields(j, {{"n_qubits", vt::number_unsigned}, {"m", vt::number_unsigned}, {"m_prime", vt::number_unsigned},
                      {"unitary_dim", vt::number_unsigned}, {"targets", vt::array}});
    EXPECT_EQ(j["m"], 2);
    EXPECT_EQ(j["m_prime"], 1);
    EXPECT_EQ(j["targets"][1]["target_bits"], "001");
    EXPECT_FALSE(j.contains("unitary"));
}

TEST(Compile, DumpUnitaryIncludesMatrix) {
    const json j = run_cli({"compile", data("states/xi2.json"), "--dump-unitary"}).parsed();
    EXPECT_EQ(j["m_prime"], 2);
    ASSERT_TRUE(j.contains("unitary"));
    EXPECT_EQ(j["unitary"].size(), 8u);
}

TEST(Compile, SingleTermPrintsNotice) {
    const CliRun r = run_cli({"compile", data("states/single_term.json")});
    ASSERT_EQ(r.code, kOk);
    EXPECT_EQ(r.parsed()["m_prime"], 0);
    EXPECT_TRUE(r.parsed().contains("notice"));
    EXPECT_NE(r.err.find("notice"), std::string::npos);
}

TEST(Compile, NonOrthogonalTermsAreInvariantViolation) {
    const CliRun r = run_cli({"compile", data("states/non_orthogonal.json")});
    EXPECT_EQ(r.code, kInvariantViolation);
    EXPECT_NE(r.err.find("invariant violation"), std::string::npos);
}

TEST(Compile, BadFilesAreInputErrors) {
    TempDir tmp;
    EXPECT_EQ(run_cli({"compile", tmp.path("missing.json")}).code, kInputError);
    EXPECT_EQ(run_cli({"compile", tmp.file("broken.json", "{not json")}).code, kInputError);
    EXPECT_EQ(run_cli({"compile", tmp.file("nofield.json", R"({"terms": []})")}).code, kInputError);
}

TEST(Compile, CsvFormat) {
    const CliRun r = run_cli({"compile", data("states/xi1.json"), "--format", "csv"});
    ASSERT_EQ(r.code, kOk);
    EXPECT_EQ(r.out, "term,target,target_bits\n0,0,000\n1,1,001\n");
}

TEST(Teleport, ExhaustiveTranscript) {
    const CliRun r = run_cli({"teleport", data("states/xi2.json")});
    ASSERT_EQ(r.code, kOk) << r.err;
    const json j = r.parsed();
    expect_transcript(j);
    EXPECT_EQ(j["ebits"], 2);
    EXPECT_EQ(j["classical_bits"], 4);
    EXPECT_EQ(j["branch_count"], 16);
    EXPECT_NEAR(j["fidelity"].get<double>(), 1.0, 1e-10);
}

TEST(Teleport, ControlledWithheld) {
    const json j = run_cli({"teleport", data("states/xi1.json"), "--controlled", "--withhold"}).parsed();
    expect_transcript(j);
    EXPECT_EQ(j["controlled"], true);
    EXPECT_EQ(j["disclosed"], false);
    EXPECT_EQ(j["classical_bits"], 2);
    EXPECT_LT(j["fidelity"].get<double>(), 1.0 - 1e-6);
}

TEST(Teleport, Bidirectional) {
    const json j = run_cli({"teleport", data("states/xi1.json"), "--reverse", data("states/xi2.json")}).parsed();
    EXPECT_EQ(j["ebits"], 3);
    expect_transcript(j["alice_to_bob"]);
    expect_transcript(j["bob_to_alice"]);
}

TEST(Teleport, SampledIsDeterministic) {
    const std::vector<std::string> args{"teleport", data("states/xi2.json"), "--mode", "sampled", "--seed", "17"};
    const CliRun a = run_cli(args);
    const CliRun b = run_cli(args);
    ASSERT_EQ(a.code, kOk);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.parsed()["branch_count"], 1);
}

TEST(Teleport, CsvHasOneLinePerBranch) {
    const CliRun r = run_cli({"teleport", data("states/xi1.json"), "--format", "csv"});
    ASSERT_EQ(r.code, kOk);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 5);
    EXPECT_EQ(r.out.rfind("protocol,alice,charlie,probability,fidelity\n", 0), 0u);
}

TEST(Teleport, BadModeIsInputError) {
    EXPECT_EQ(run_cli({"teleport", data("states/xi1.json"), "--mode", "random"}).code, kInputError);
}

TEST(VerifyTable1, BundledRowsPass) {
    const CliRun r = run_cli({"verify-table1"});
    ASSERT_EQ(r.code, kOk) << r.err;
    const json j = r.parsed();
    EXPECT_EQ(j["all_passed"], true);
    ASSERT_EQ(j["rows"].size(), 8u);
    EXPECT_EQ(j["rows"][0]["verdict"], "PASS");
    EXPECT_EQ(j["rows"][0]["ebits_consumed"], 1);
    EXPECT_TRUE(j["rows"][7]["verification"]["unitary"].is_boolean());
    EXPECT_NE(r.err.find("row 1: PASS"), std::string::npos);
}

TEST(VerifyTable1, DuplicatedImageIsNonBijective) {
    json table = io::read_json_file(data("table1.json"));
    auto& claim = table["rows"][0]["claimed_unitary"];
    claim[1]["target"] = claim[0]["target"];
    TempDir tmp;
    const std::string path = tmp.file("tampered.json", table.dump());
    const CliRun r = run_cli({"verify-table1", "--table", path});
    EXPECT_EQ(r.code, kVerificationFailure);
    const json j = r.parsed();
    EXPECT_EQ(j["rows"][0]["verdict"], "FAIL non-bijective");
    EXPECT_EQ(j["rows"][1]["verdict"], "PASS");
    EXPECT_EQ(j["all_passed"], false);
}

TEST(VerifyTable1, NonCompressingClaimFails) {
    json table = io::read_json_file(data("table1.json"));
    auto& claim = table["rows"][0]["claimed_unitary"];
    for (auto& t : claim) t["source"] = json::array({json::array({t["target"], 1})});
    TempDir tmp;
    const CliRun r = run_cli({"verify-table1", "--table", tmp.file("identity.json", table.dump())});
    EXPECT_EQ(r.code, kVerificationFailure);
    EXPECT_NE(r.parsed()["rows"][0]["verdict"].get<std::string>().find("non-compressing"), std::string::npos);
}

TEST(Experiment, AnalyticNoiselessIsPerfect) {
    const CliRun r = run_cli({"experiment", "--analytic"});
    ASSERT_EQ(r.code, kOk) << r.err;
    const json j = r.parsed();
    EXPECT_NEAR(j["fidelities"]["theory_vs_teleported"].get<double>(), 1.0, 1e-6);
    EXPECT_NEAR(j["fidelities"]["theory_vs_prepared"].get<double>(), 1.0, 1e-6);
    EXPECT_EQ(j["fixtures"]["reported_theory_vs_rho_prime"], 0.9221);
    EXPECT_EQ(j["fixtures"]["reported_theory_vs_rho_double_prime"], 0.9378);
    EXPECT_TRUE(j["fixtures"]["theory_vs_rho_double_prime"].is_number());
    EXPECT_EQ(j["density_matrices"]["teleported"]["entries"].size(), 4u);
}

TEST(Experiment, NoisyRunFallsBelowOne) {
    const json j = run_cli({"experiment", "--noise-p", "0.05", "--readout-flip", "0.03", "--shots", "8192", "--seed",
                            "4"})
                       .parsed();
    for (const char* k : {"theory_vs_prepared", "theory_vs_teleported"}) {
        EXPECT_LT(j["fidelities"][k].get<double>(), 1.0) << k;
    }
}

TEST(Experiment, OutputsAreByteIdenticalForSameSeed) {
    TempDir tmp;
    const std::vector<std::string> base{"experiment", "--seed", "9", "--shots", "2048", "--noise-p", "0.01"};
    auto a = base, b = base;
    a.insert(a.end(), {"--out", tmp.path("a.json"), "--csv", tmp.path("a.csv")});
    b.insert(b.end(), {"--out", tmp.path("b.json"), "--csv", tmp.path("b.csv")});
    ASSERT_EQ(run_cli(a).code, kOk);
    ASSERT_EQ(run_cli(b).code, kOk);
    EXPECT_EQ(slurp(tmp.path("a.json")), slurp(tmp.path("b.json")));
    EXPECT_EQ(slurp(tmp.path("a.csv")), slurp(tmp.path("b.csv")));
    EXPECT_EQ(slurp(tmp.path("a.csv")).rfind("matrix,row,col,re,im\n", 0), 0u);
    EXPECT_FALSE(slurp(tmp.path("a.json")).empty());
}

TEST(Experiment, UserPreparationCircuit) {
    const CliRun r = run_cli({"experiment", "--analytic", "--no-fixtures", "--prep-circuit", data("circuits/bell.txt")});
    ASSERT_EQ(r.code, kOk) << r.err;
    const json j = r.parsed();
    EXPECT_FALSE(j.contains("fixtures"));
    EXPECT_NEAR(j["density_matrices"]["theory"]["entries"][0][3][0].get<double>(), 0.5, 1e-12);
    EXPECT_NEAR(j["fidelities"]["theory_vs_teleported"].get<double>(), 1.0, 1e-6);
}

TEST(Experiment, BadCircuitIsInputError) {
    TempDir tmp;
    EXPECT_EQ(run_cli({"experiment", "--prep-circuit", tmp.file("c.txt", "QUBITS 2\nFOO 1\n")}).code, kInputError);
    EXPECT_EQ(run_cli({"experiment", "--prep-circuit", tmp.file("w.txt", "QUBITS 3\nH 0\n")}).code, kInputError);
    EXPECT_EQ(run_cli({"experiment", "--shots", "0"}).code, kInputError);
    EXPECT_EQ(run_cli({"experiment", "--noise-p", "2"}).code, kInputError);
}

TEST(Tomo, ReconstructsCountsFile) {
    const DensityMatrix rho = DensityMatrix::from_pure(StateVector(2));
    TempDir tmp;
    const std::string counts = tmp.file("counts.json", io::to_json(tomography::simulate_all(rho, 4096, 2)).dump());
    const std::string ref = tmp.file("ref.json", io::to_json(rho).dump());
    const CliRun r = run_cli({"tomo", counts, "--reference", ref});
    ASSERT_EQ(r.code, kOk) << r.err;
    const json j = r.parsed();
    const DensityMatrix back = io::parse_density_matrix(j, -1.0);
    EXPECT_NEAR(back.trace(), 1.0, 1e-9);
    EXPECT_GT(j["fidelity_to_reference"].get<double>(), 0.97);
}

TEST(Tomo, InconsistentCountsAreInvariantViolation) {
    TempDir tmp;
    const std::string counts = tmp.file("bad.json", R"([{"setting": "Z", "shots": 5, "counts": {"0": 1}}])");
    EXPECT_EQ(run_cli({"tomo", counts}).code, kInvariantViolation);
}

TEST(Fidelity, FixturePair) {
    const CliRun r = run_cli({"fidelity", data("fixtures/rho_prime.json"), data("fixtures/rho_double_prime.json")});
    ASSERT_EQ(r.code, kOk) << r.err;
    EXPECT_NEAR(r.parsed()["fidelity"].get<double>(), 0.93777757, 1e-6);
    const CliRun csv = run_cli({"fidelity", data("fixtures/rho_prime.json"), data("fixtures/rho_prime.json"), "--format",
                             "csv"});
    ASSERT_EQ(csv.out.rfind("fidelity,trace_distance\n", 0), 0u);
    EXPECT_NEAR(std::stod(csv.out.substr(csv.out.find('\n') + 1)), 1.0, 1e-10);
}

TEST(Fidelity, NonHermitianInputIsInvariantViolation) {
    TempDir tmp;
    const std::string bad = tmp.file("bad.json", R"({"entries": [[0.5, 0.3], [0, 0.5]]})");
    EXPECT_EQ(run_cli({"fidelity", bad, bad}).code, kInvariantViolation);
}

}  // namespace
}  // namespace optport::cli
