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

// Bell-pair teleportation of a compressed payload, the end-to-end optimal scheme,
// and its controlled / bidirectional variants.

#include <cstdint>
#include <string>
#include <vector>

#include "optport/compiler.hpp"
#include "optport/qcore.hpp"

namespace optport::teleport {

enum class Party { alice, bob, charlie };
std::string to_string(Party p);

/// Label such as "A1", "B2", "C1" (pairs are numbered from 1).
struct QubitOwner {
    Party party;
    int index;
    std::string label() const;
};

/// m' copies of Phi+ = (|00> + |11>)/sqrt2. Qubit 2i belongs to Alice (A_{i+1}) and
/// qubit 2i+1 to Bob (B_{i+1}).
struct BellChannel {
    int pairs = 0;
    StateVector state;
    std::vector<QubitOwner> ownership;

    static BellChannel make(int pairs);
};

/// `triplets` copies of (|000> + |111>)/sqrt2 laid out (A_i, B_i, C_i).
struct GhzChannel {
    int triplets = 0;
    StateVector state;
    std::vector<QubitOwner> ownership;

    static GhzChannel make(int triplets);
};

enum class Pauli { I, X, Z, ZX };
std::string to_string(Pauli p);
/// 2x2 matrix; ZX means X first, then Z.
CMatrix matrix(Pauli p);

/// Bell outcome (z, x) -> Bob's correction: 00->I, 01->X, 10->Z, 11->ZX.
struct CorrectionTable {
    static Pauli lookup(int z, int x);
};

struct Mode {
    enum class Kind { sampled, exhaustive } kind = Kind::exhaustive;
    std::uint64_t seed = 0;

    static Mode exhaustive() { return {Kind::exhaustive, 0}; }
    static Mode sampled(std::uint64_t seed) { return {Kind::sampled, seed}; }
};

struct TeleportBranch {
    /// Alice's Bell outcome per pair as "zx" bit strings.
    std::vector<std::string> alice;
    /// Charlie's "+"/"-" per triplet; empty for Bell channels.
    std::vector<std::string> charlie;
    double probability = 0.0;
    /// Bob's register after corrections.
    StateVector bob;
    double fidelity = 0.0;
};

struct TeleportResult {
    std::vector<TeleportBranch> branches;
    /// Probability-weighted sum of |bob><bob| (equal weights in sampled mode).
    CMatrix bob_average;
};

/// Teleports an m'-qubit payload through `channel`. Exhaustive mode returns all 4^{m'}
/// branches sorted by outcome; sampled mode returns the one branch drawn.
TeleportResult teleport_compressed(const StateVector& phi, const BellChannel& channel, const Mode& mode);

// ---------------------------------------------------------------------------
// Transcripts
// ---------------------------------------------------------------------------

struct BranchRecord {
    std::vector<std::string> alice;    // "zx" per pair
    std::vector<std::string> charlie;  // "+" / "-" per triplet
    double probability = 0.0;
    /// Fidelity of Bob's final n-qubit state with the input, for this branch.
    double fidelity = 0.0;
};

struct Transcript {
    std::string protocol;
    std::size_t m = 0;
    int m_prime = 0;
    int n_qubits = 0;
    /// Bell pairs consumed (or GHZ triplets, for controlled runs).
    int ebits = 0;
    int alice_bits = 0;
    int charlie_bits = 0;
    int classical_bits() const { return alice_bits + charlie_bits; }
    bool controlled = false;
    bool disclosed = true;
    std::vector<BranchRecord> branches;
    std::size_t branch_count() const { return branches.size(); }
    /// Smallest per-branch fidelity.
    double min_fidelity = 0.0;
    /// Fidelity of Bob's branch-averaged final state with the input.
    double fidelity = 0.0;
    /// Bob's branch-averaged m'-qubit payload, before decompression.
    CMatrix bob_payload_average;
    /// The payload Alice sent (after compression).
    StateVector payload;
};

Transcript run_optimal_teleport(const compiler::SparseState& state, const Mode& mode);

struct ControlOptions {
    bool disclose = true;
    /// Alice measures before Charlie instead of after.
    bool alice_first = false;
};

/// Controlled counterpart of teleport_compressed over GHZ triplets.
TeleportResult teleport_controlled_compressed(const StateVector& phi, const GhzChannel& channel, const Mode& mode,
                                              const ControlOptions& options);

Transcript controlled_teleport(const compiler::SparseState& state, const Mode& mode, const ControlOptions& options);

struct BidirectionalTranscript {
    Transcript alice_to_bob;
    Transcript bob_to_alice;
    int ebits_total() const { return alice_to_bob.ebits + bob_to_alice.ebits; }
};

/// Two independent runs over disjoint channels. In controlled mode Charlie holds one
/// GHZ qubit per channel pair and `options` applies to both directions.
BidirectionalTranscript bidirectional_teleport(const compiler::SparseState& alice_to_bob,
                                               const compiler::SparseState& bob_to_alice, bool controlled,
                                               const Mode& mode, const ControlOptions& options = {});

/// Applies (rho + Z_q rho Z_q)/2 for every qubit q: Bob's view when Charlie withholds.
CMatrix z_dephase_all(const CMatrix& rho);

}  // namespace optport::teleport
