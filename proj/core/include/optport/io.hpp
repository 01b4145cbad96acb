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

// JSON encodings of the project's file formats. See docs/formats.md.
//
// Malformed documents raise ParseError; well-formed documents describing invalid
// objects (non-orthogonal terms, non-Hermitian matrices, ...) raise InvariantViolation.

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "optport/compiler.hpp"
#include "optport/teleport.hpp"
#include "optport/tomography.hpp"

namespace optport::io {

using nlohmann::json;

/// Environment variable that overrides the bundled data directory.
inline constexpr const char* kDataDirEnv = "OPTPORT_DATA_DIR";

/// $OPTPORT_DATA_DIR, else the source-tree data/ directory, else the installed copy.
std::string data_dir();

json read_json_file(const std::string& path);

Complex parse_complex(const json& j);
json complex_to_json(Complex c);

compiler::SparseState parse_sparse_state(const json& j);
compiler::SparseState load_sparse_state(const std::string& path);
json to_json(const compiler::SparseState& state);

CMatrix parse_matrix(const json& j);
json matrix_to_json(const CMatrix& m);

DensityMatrix parse_density_matrix(const json& j, double psd_slack);
DensityMatrix load_density_matrix(const std::string& path, double psd_slack = tol::kPsdFixture);
json to_json(const DensityMatrix& rho);

std::vector<tomography::CountsTable> parse_counts(const json& j);
json to_json(const std::vector<tomography::CountsTable>& tables);

json to_json(const compiler::CompressionPlan& plan, bool include_unitary);
json to_json(const teleport::Transcript& t);
json to_json(const compiler::VerificationReport& r);

struct Table1Row {
    int row = 0;
    std::string label;
    std::string channel;
    int bell_pairs = 0;
    compiler::SparseState state;
    compiler::ClaimedMap claimed;
};

std::vector<Table1Row> parse_table1(const json& j);
std::vector<Table1Row> load_table1(const std::string& path);

}  // namespace optport::io
