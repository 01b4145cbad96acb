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

#include "optport/teleport.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

namespace optport::teleport {

namespace {

constexpr int kMaxJointQubits = 18;

struct Step {
    Party party;
    int pair;
    std::vector<int> qubits;
    MeasurementBasis basis;
};

struct Leaf {
    std::vector<std::string> alice;
    std::vector<std::string> charlie;
    double probability;
    /// Unmeasured register only; measured qubits are projected out as soon as they
    /// collapse, so the register shrinks with every step.
    StateVector state;
    /// Original qubit labels of `state`, in register order.
    std::vector<int> live;
};

StateVector basis_column(const MeasurementBasis& basis, std::size_t n_measured, std::size_t outcome) {
    return StateVector::normalized(basis.vectors(n_measured).col(static_cast<Eigen::Index>(outcome)));
}

std::size_t pack(const std::vector<int>& bits) {
    std::size_t v = 0;
    for (int b : bits) v = (v << 1) | static_cast<std::size_t>(b);
    return v;
}

std::string outcome_label(const Step& step, const std::vector<int>& bits) {
    if (step.party == Party::charlie) return bits[0] ? "-" : "+";
    std::string s;
    for (int b : bits) s.push_back(b ? '1' : '0');
    return s;
}

std::vector<int> positions(const std::vector<int>& live, const std::vector<int>& labels) {
    std::vector<int> out;
    for (int q : labels) {
        const auto it = std::find(live.begin(), live.end(), q);
        out.push_back(static_cast<int>(it - live.begin()));
    }
    return out;
}

/// Logs the outcome and removes the collapsed qubits from the register.
void settle(Leaf& leaf, const Step& step, const std::vector<int>& local, const std::vector<int>& bits,
            const StateVector& post) {
    auto& log = step.party == Party::charlie ? leaf.charlie : leaf.alice;
    if (log.size() <= static_cast<std::size_t>(step.pair)) log.resize(static_cast<std::size_t>(step.pair) + 1);
    log[static_cast<std::size_t>(step.pair)] = outcome_label(step, bits);
    leaf.state = project_onto(post, local, basis_column(step.basis, step.qubits.size(), pack(bits)));
    std::erase_if(leaf.live, [&](int q) { return std::find(step.qubits.begin(), step.qubits.end(), q) != step.qubits.end(); });
}

void walk(const std::vector<Step>& steps, std::size_t k, Leaf leaf, const Mode& mode, std::vector<Leaf>& out) {
    if (k == steps.size()) {
        out.push_back(std::move(leaf));
        return;
    }
    const Step& step = steps[k];
    const std::vector<int> local = positions(leaf.live, step.qubits);
    if (mode.kind == Mode::Kind::sampled) {
        const MeasurementRecord rec = measure_projective(leaf.state, local, step.basis, mix_seed(mode.seed, k));
        leaf.probability *= rec.probability;
        settle(leaf, step, local, rec.outcome, rec.post_state);
        walk(steps, k + 1, std::move(leaf), mode, out);
        return;
    }
    const BranchSet branches = branch_all_outcomes(leaf.state, local, step.basis);
    for (const auto& b : branches.branches) {
        Leaf child{leaf.alice, leaf.charlie, leaf.probability * b.probability, StateVector(0), leaf.live};
        settle(child, step, local, b.outcome, b.post_state);
        walk(steps, k + 1, std::move(child), mode, out);
    }
}

struct EngineConfig {
    bool ghz = false;
    bool disclose = true;
    bool alice_first = false;
};

struct EngineBranch {
    std::vector<std::string> alice;
    std::vector<std::string> charlie;
    double probability;
    StateVector bob;
};

/// Runs the measure-and-correct protocol on payload ⊗ channel and returns Bob's
/// corrected payload register for each branch, sorted by (charlie, alice).
std::vector<EngineBranch> run_engine(const StateVector& phi, const StateVector& channel, const EngineConfig& cfg,
                                     const Mode& mode) {
    const int mp = phi.n_qubits();
    const int stride = cfg.ghz ? 3 : 2;
    if (mp * (stride + 1) > kMaxJointQubits) {
        throw std::invalid_argument("payload of " + std::to_string(mp) + " qubits needs a " +
                                    std::to_string(mp * (stride + 1)) + "-qubit joint register; limit is " +
                                    std::to_string(kMaxJointQubits));
    }
    std::vector<Step> alice_steps;
    std::vector<Step> charlie_steps;
    for (int i = 0; i < mp; ++i) {
        const int a = mp + stride * i;
        alice_steps.push_back({Party::alice, i, {i, a}, MeasurementBasis::bell()});
        if (cfg.ghz) charlie_steps.push_back({Party::charlie, i, {a + 2}, MeasurementBasis::plus_minus()});
    }
    std::vector<Step> steps;
    const auto& first = cfg.alice_first ? alice_steps : charlie_steps;
    const auto& second = cfg.alice_first ? charlie_steps : alice_steps;
    steps.insert(steps.end(), first.begin(), first.end());
    steps.insert(steps.end(), second.begin(), second.end());

    const StateVector joint = tensor(phi, channel);
    std::vector<int> labels(static_cast<std::size_t>(joint.n_qubits()));
    for (std::size_t q = 0; q < labels.size(); ++q) labels[q] = static_cast<int>(q);
    std::vector<Leaf> leaves;
    walk(steps, 0, Leaf{{}, {}, 1.0, joint, labels}, mode, leaves);

    std::vector<EngineBranch> out;
    out.reserve(leaves.size());
    for (auto& leaf : leaves) {
        CVector bob = leaf.state.amplitudes();
        for (int i = 0; i < mp; ++i) {
            const auto ui = static_cast<std::size_t>(i);
            if (cfg.ghz && cfg.disclose && leaf.charlie[ui] == "-") {
                bob = apply_local(bob, mp, {i}, matrix(Pauli::Z));
            }
            const std::string& zx = leaf.alice[ui];
            bob = apply_local(bob, mp, {i}, matrix(CorrectionTable::lookup(zx[0] - '0', zx[1] - '0')));
        }
        out.push_back({std::move(leaf.alice), std::move(leaf.charlie), leaf.probability,
                       StateVector::normalized(std::move(bob))});
    }
    std::sort(out.begin(), out.end(), [](const EngineBranch& x, const EngineBranch& y) {
        return std::tie(x.charlie, x.alice) < std::tie(y.charlie, y.alice);
    });
    return out;
}

Transcript assemble(const compiler::SparseState& state, const EngineConfig& cfg, const Mode& mode) {
    const compiler::CompressionPlan plan = compiler::build_plan(state);
    const compiler::CompressedState compressed = compiler::compress(state, plan);
    const StateVector phi = compressed.payload();
    const int mp = plan.m_prime;

    const StateVector channel = cfg.ghz ? GhzChannel::make(mp).state : BellChannel::make(mp).state;
    const std::vector<EngineBranch> branches = run_engine(phi, channel, cfg, mode);

    Transcript t;
    t.protocol = cfg.ghz ? "controlled" : "teleport";
    t.m = plan.m;
    t.m_prime = mp;
    t.n_qubits = state.n_qubits();
    t.ebits = mp;
    t.alice_bits = 2 * mp;
    t.controlled = cfg.ghz;
    t.disclosed = !cfg.ghz || cfg.disclose;
    t.charlie_bits = cfg.ghz && cfg.disclose ? mp : 0;
    t.payload = phi;

    const StateVector target = state.dense();
    const auto dp = static_cast<Eigen::Index>(dim_of(mp));
    const auto dn = static_cast<Eigen::Index>(state.dim());
    t.bob_payload_average = CMatrix::Zero(dp, dp);
    CMatrix final_average = CMatrix::Zero(dn, dn);
    double total = 0.0;
    t.min_fidelity = 1.0;
    for (const auto& b : branches) {
        const double w = mode.kind == Mode::Kind::sampled ? 1.0 : b.probability;
        const StateVector final_state = compiler::decompress(b.bob, plan);
        const double f = overlap_fidelity(target, final_state);
        t.branches.push_back({b.alice, b.charlie, b.probability, f});
        t.min_fidelity = std::min(t.min_fidelity, f);
        t.bob_payload_average += w * b.bob.amplitudes() * b.bob.amplitudes().adjoint();
        final_average += w * final_state.amplitudes() * final_state.amplitudes().adjoint();
        total += w;
    }
    t.bob_payload_average /= total;
    final_average /= total;
    const double overlap = (target.amplitudes().adjoint() * final_average * target.amplitudes())(0, 0).real();
    t.fidelity = std::sqrt(std::clamp(overlap, 0.0, 1.0));
    return t;
}

}  // namespace

std::string to_string(Party p) {
    switch (p) {
        case Party::alice:
            return "alice";
        case Party::bob:
            return "bob";
        case Party::charlie:
            return "charlie";
    }
    return "?";
}

std::string QubitOwner::label() const {
    const char prefix = party == Party::alice ? 'A' : party == Party::bob ? 'B' : 'C';
    return std::string(1, prefix) + std::to_string(index);
}

BellChannel BellChannel::make(int pairs) {
    if (pairs < 0) throw std::invalid_argument("negative pair count");
    CVector phi_plus = CVector::Zero(4);
    phi_plus[0] = phi_plus[3] = 1.0 / std::numbers::sqrt2;
    const StateVector pair = StateVector::from_amplitudes(phi_plus);
    BellChannel ch;
    ch.pairs = pairs;
    ch.state = StateVector(0);
    for (int i = 1; i <= pairs; ++i) {
        ch.state = tensor(ch.state, pair);
        ch.ownership.push_back({Party::alice, i});
        ch.ownership.push_back({Party::bob, i});
    }
    return ch;
}

GhzChannel GhzChannel::make(int triplets) {
    if (triplets < 0) throw std::invalid_argument("negative triplet count");
    CVector ghz = CVector::Zero(8);
    ghz[0] = ghz[7] = 1.0 / std::numbers::sqrt2;
    const StateVector triple = StateVector::from_amplitudes(ghz);
    GhzChannel ch;
    ch.triplets = triplets;
    ch.state = StateVector(0);
    for (int i = 1; i <= triplets; ++i) {
        ch.state = tensor(ch.state, triple);
        ch.ownership.push_back({Party::alice, i});
        ch.ownership.push_back({Party::bob, i});
        ch.ownership.push_back({Party::charlie, i});
    }
    return ch;
}

std::string to_string(Pauli p) {
    switch (p) {
        case Pauli::I:
            return "I";
        case Pauli::X:
            return "X";
        case Pauli::Z:
            return "Z";
        case Pauli::ZX:
            return "ZX";
    }
    return "?";
}

CMatrix matrix(Pauli p) {
    CMatrix m(2, 2);
    switch (p) {
        case Pauli::I:
            m << 1, 0, 0, 1;
            break;
        case Pauli::X:
            m << 0, 1, 1, 0;
            break;
        case Pauli::Z:
            m << 1, 0, 0, -1;
            break;
        case Pauli::ZX:
            m << 0, 1, -1, 0;
            break;
    }
    return m;
}

Pauli CorrectionTable::lookup(int z, int x) {
    if ((z != 0 && z != 1) || (x != 0 && x != 1)) throw std::invalid_argument("Bell outcome bits must be 0/1");
    static constexpr Pauli kTable[2][2] = {{Pauli::I, Pauli::X}, {Pauli::Z, Pauli::ZX}};
    return kTable[z][x];
}

namespace {

TeleportResult collect(const StateVector& phi, std::vector<EngineBranch> branches, const Mode& mode) {
    TeleportResult result;
    const auto d = static_cast<Eigen::Index>(phi.dim());
    result.bob_average = CMatrix::Zero(d, d);
    double total = 0.0;
    for (auto& b : branches) {
        const double w = mode.kind == Mode::Kind::sampled ? 1.0 : b.probability;
        result.bob_average += w * b.bob.amplitudes() * b.bob.amplitudes().adjoint();
        total += w;
        const double f = overlap_fidelity(phi, b.bob);
        result.branches.push_back({std::move(b.alice), std::move(b.charlie), b.probability, std::move(b.bob), f});
    }
    result.bob_average /= total;
    return result;
}

}  // namespace

TeleportResult teleport_compressed(const StateVector& phi, const BellChannel& channel, const Mode& mode) {
    if (channel.pairs != phi.n_qubits()) {
        throw std::invalid_argument("channel has " + std::to_string(channel.pairs) + " pairs but the payload has " +
                                    std::to_string(phi.n_qubits()) + " qubits");
    }
    return collect(phi, run_engine(phi, channel.state, EngineConfig{}, mode), mode);
}

TeleportResult teleport_controlled_compressed(const StateVector& phi, const GhzChannel& channel, const Mode& mode,
                                              const ControlOptions& options) {
    if (channel.triplets != phi.n_qubits()) {
        throw std::invalid_argument("channel has " + std::to_string(channel.triplets) +
                                    " triplets but the payload has " + std::to_string(phi.n_qubits()) + " qubits");
    }
    return collect(phi, run_engine(phi, channel.state, EngineConfig{true, options.disclose, options.alice_first}, mode),
                   mode);
}

Transcript run_optimal_teleport(const compiler::SparseState& state, const Mode& mode) {
    return assemble(state, EngineConfig{}, mode);
}

Transcript controlled_teleport(const compiler::SparseState& state, const Mode& mode, const ControlOptions& options) {
    return assemble(state, EngineConfig{true, options.disclose, options.alice_first}, mode);
}

BidirectionalTranscript bidirectional_teleport(const compiler::SparseState& alice_to_bob,
                                               const compiler::SparseState& bob_to_alice, bool controlled,
                                               const Mode& mode, const ControlOptions& options) {
    const Mode forward = mode.kind == Mode::Kind::sampled ? Mode::sampled(mix_seed(mode.seed, 1)) : mode;
    const Mode backward = mode.kind == Mode::Kind::sampled ? Mode::sampled(mix_seed(mode.seed, 2)) : mode;
    BidirectionalTranscript out;
    if (controlled) {
        out.alice_to_bob = controlled_teleport(alice_to_bob, forward, options);
        out.bob_to_alice = controlled_teleport(bob_to_alice, backward, options);
    } else {
        out.alice_to_bob = run_optimal_teleport(alice_to_bob, forward);
        out.bob_to_alice = run_optimal_teleport(bob_to_alice, backward);
    }
    const std::string name = controlled ? "bidirectional_controlled" : "bidirectional";
    out.alice_to_bob.protocol = name + ":alice_to_bob";
    out.bob_to_alice.protocol = name + ":bob_to_alice";
    return out;
}

CMatrix z_dephase_all(const CMatrix& rho) {
    const int n = qubits_for_dim(static_cast<std::size_t>(rho.rows()));
    CMatrix out = rho;
    for (int q = 0; q < n; ++q) {
        const CMatrix z = kron(kron(CMatrix::Identity(dim_of(q), dim_of(q)), matrix(Pauli::Z)),
                               CMatrix::Identity(dim_of(n - q - 1), dim_of(n - q - 1)));
        out = 0.5 * (out + z * out * z);
    }
    return out;
}

}  // namespace optport::teleport
