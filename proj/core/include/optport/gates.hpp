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

// Clifford+T circuits over a dense state vector.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "optport/qcore.hpp"

namespace optport::gates {

enum class GateKind { H, S, SDG, T, TDG, X, Y, Z, CNOT };

std::string_view name(GateKind kind);
std::optional<GateKind> parse_kind(std::string_view text);
int arity(GateKind kind);

struct Gate {
    GateKind kind;
    /// Control first for CNOT.
    std::vector<int> targets;

    /// 2x2 or 4x4 matrix; for CNOT the first listed qubit is the control.
    CMatrix matrix() const;
    bool operator==(const Gate&) const = default;
};

class Circuit {
   public:
    explicit Circuit(int n_qubits) : n_qubits_(n_qubits) {}

    int n_qubits() const { return n_qubits_; }
    const std::vector<Gate>& gates() const { return gates_; }

    /// Validates arity and index range; returns *this for chaining.
    Circuit& add(GateKind kind, std::vector<int> targets);
    Circuit& append(const Circuit& other);

    Circuit& h(int q) { return add(GateKind::H, {q}); }
    Circuit& s(int q) { return add(GateKind::S, {q}); }
    Circuit& sdg(int q) { return add(GateKind::SDG, {q}); }
    Circuit& t(int q) { return add(GateKind::T, {q}); }
    Circuit& tdg(int q) { return add(GateKind::TDG, {q}); }
    Circuit& x(int q) { return add(GateKind::X, {q}); }
    Circuit& y(int q) { return add(GateKind::Y, {q}); }
    Circuit& z(int q) { return add(GateKind::Z, {q}); }
    Circuit& cnot(int control, int target) { return add(GateKind::CNOT, {control, target}); }
    /// Controlled-Z, spelled H·CNOT·H on the target.
    Circuit& cz(int control, int target) { return h(target).cnot(control, target).h(target); }

    /// The same gates, reversed and individually inverted.
    Circuit inverse() const;

    bool operator==(const Circuit&) const = default;

   private:
    int n_qubits_;
    std::vector<Gate> gates_;
};

StateVector apply(const Gate& gate, const StateVector& input);
/// Left-to-right gate application.
StateVector apply(const Circuit& circuit, const StateVector& input);
/// Full 2^n x 2^n matrix of the circuit.
UnitaryMatrix to_unitary(const Circuit& circuit);

/// The two-qubit preparation sequence H,T,H,S,T^dagger,X,H on qubit 0 followed by
/// CNOT(0,1), H(0), CNOT(0,1).
Circuit prep_circuit();
/// Output of prep_circuit() on |00>:
/// e^{i pi/8} (a(|00>+|11>) + b(|01>-|10>)) with |a|^2 = 0.375, |b|^2 = 0.125.
StateVector prep_paper_state();

/// Four qubits q0..q3. Bell pair on (q2,q3), CNOT q1->q2, H q1, then the coherent
/// corrections CNOT q2->q3 and CZ q1->q3. Leaves the input of q1 on q3, disentangled.
Circuit coherent_teleport_circuit();

/// The two-qubit compression used in the hardware run: CNOT(1->0) (I⊗H) CNOT(1->0).
/// Maps the prepared state to sqrt2 (a|00> - b|01>), i.e. onto qubit 1.
Circuit two_qubit_compression_circuit();

// Line-oriented text format:
//   # comment
//   QUBITS 4
//   H 0
//   CNOT 1 2
// Gate names: H S SDG T TDG X Y Z CNOT (case-insensitive). The QUBITS line must
// precede the first gate.
Circuit parse_circuit(std::istream& in);
Circuit parse_circuit_text(std::string_view text);
std::string to_text(const Circuit& circuit);

}  // namespace optport::gates
