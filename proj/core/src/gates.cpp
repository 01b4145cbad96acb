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

#include "optport/gates.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <numbers>
#include <sstream>

namespace optport::gates {

namespace {

struct KindInfo {
    GateKind kind;
    std::string_view name;
    int arity;
};

constexpr KindInfo kKinds[] = {
    {GateKind::H, "H", 1},     {GateKind::S, "S", 1}, {GateKind::SDG, "SDG", 1},
    {GateKind::T, "T", 1},     {GateKind::TDG, "TDG", 1}, {GateKind::X, "X", 1},
    {GateKind::Y, "Y", 1},     {GateKind::Z, "Z", 1}, {GateKind::CNOT, "CNOT", 2},
};

const KindInfo& info(GateKind kind) {
    for (const auto& k : kKinds) {
        if (k.kind == kind) return k;
    }
    throw std::invalid_argument("unknown gate kind");
}

GateKind inverse_kind(GateKind kind) {
    switch (kind) {
        case GateKind::S:
            return GateKind::SDG;
        case GateKind::SDG:
            return GateKind::S;
        case GateKind::T:
            return GateKind::TDG;
        case GateKind::TDG:
            return GateKind::T;
        default:
            return kind;
    }
}

}  // namespace

std::string_view name(GateKind kind) { return info(kind).name; }
int arity(GateKind kind) { return info(kind).arity; }

std::optional<GateKind> parse_kind(std::string_view text) {
    std::string upper(text);
    std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
    for (const auto& k : kKinds) {
        if (k.name == upper) return k.kind;
    }
    return std::nullopt;
}

CMatrix Gate::matrix() const {
    const double s = 1.0 / std::numbers::sqrt2;
    const Complex w = std::polar(1.0, std::numbers::pi / 4);
    CMatrix m(2, 2);
    switch (kind) {
        case GateKind::H:
            m << s, s, s, -s;
            break;
        case GateKind::S:
            m << 1, 0, 0, Complex(0, 1);
            break;
        case GateKind::SDG:
            m << 1, 0, 0, Complex(0, -1);
            break;
        case GateKind::T:
            m << 1, 0, 0, w;
            break;
        case GateKind::TDG:
            m << 1, 0, 0, std::conj(w);
            break;
        case GateKind::X:
            m << 0, 1, 1, 0;
            break;
        case GateKind::Y:
            m << 0, Complex(0, -1), Complex(0, 1), 0;
            break;
        case GateKind::Z:
            m << 1, 0, 0, -1;
            break;
        case GateKind::CNOT:
            m = CMatrix::Zero(4, 4);
            m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
            break;
    }
    return m;
}

Circuit& Circuit::add(GateKind kind, std::vector<int> targets) {
    if (static_cast<int>(targets.size()) != arity(kind)) {
        throw std::invalid_argument(std::string(name(kind)) + " takes " + std::to_string(arity(kind)) + " qubit(s)");
    }
    for (int q : targets) {
        if (q < 0 || q >= n_qubits_) {
            throw std::invalid_argument(std::string(name(kind)) + ": qubit " + std::to_string(q) +
                                        " out of range for " + std::to_string(n_qubits_) + "-qubit circuit");
        }
    }
    if (kind == GateKind::CNOT && targets[0] == targets[1]) {
        throw std::invalid_argument("CNOT control and target must differ");
    }
    gates_.push_back(Gate{kind, std::move(targets)});
    return *this;
}

Circuit& Circuit::append(const Circuit& other) {
    if (other.n_qubits_ > n_qubits_) {
        throw std::invalid_argument("cannot append a wider circuit");
    }
    for (const auto& g : other.gates_) add(g.kind, g.targets);
    return *this;
}

Circuit Circuit::inverse() const {
    Circuit out(n_qubits_);
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) out.add(inverse_kind(it->kind), it->targets);
    return out;
}

StateVector apply(const Gate& gate, const StateVector& input) {
    return StateVector::normalized(apply_local(input.amplitudes(), input.n_qubits(), gate.targets, gate.matrix()));
}

StateVector apply(const Circuit& circuit, const StateVector& input) {
    if (circuit.n_qubits() != input.n_qubits()) {
        throw std::invalid_argument("circuit acts on " + std::to_string(circuit.n_qubits()) +
                                    " qubits but the state has " + std::to_string(input.n_qubits()));
    }
    CVector amps = input.amplitudes();
    for (const auto& g : circuit.gates()) amps = apply_local(amps, input.n_qubits(), g.targets, g.matrix());
    return StateVector::normalized(std::move(amps));
}

UnitaryMatrix to_unitary(const Circuit& circuit) {
    const auto d = static_cast<Eigen::Index>(dim_of(circuit.n_qubits()));
    CMatrix u = CMatrix::Identity(d, d);
    for (Eigen::Index c = 0; c < d; ++c) {
        CVector col = u.col(c);
        for (const auto& g : circuit.gates()) col = apply_local(col, circuit.n_qubits(), g.targets, g.matrix());
        u.col(c) = col;
    }
    return UnitaryMatrix(std::move(u));
}

Circuit prep_circuit() {
    Circuit c(2);
    c.h(0).t(0).h(0).s(0).tdg(0).x(0).h(0).cnot(0, 1).h(0).cnot(0, 1);
    return c;
}

StateVector prep_paper_state() { return apply(prep_circuit(), StateVector(2)); }

Circuit coherent_teleport_circuit() {
    Circuit c(4);
    c.h(2).cnot(2, 3);       // Bell pair on (q2, q3)
    c.cnot(1, 2).h(1);       // entangle q1 with the pair
    c.cnot(2, 3).cz(1, 3);   // coherent corrections
    return c;
}

Circuit two_qubit_compression_circuit() {
    Circuit c(2);
    c.cnot(1, 0).h(1).cnot(1, 0);
    return c;
}

Circuit parse_circuit(std::istream& in) {
    std::optional<Circuit> circuit;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream words(line);
        std::string head;
        if (!(words >> head)) continue;
        auto fail = [&](const std::string& what) {
            throw ParseError("circuit line " + std::to_string(line_no) + ": " + what);
        };
        std::string upper = head;
        std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
        if (upper == "QUBITS") {
            int n = -1;
            if (circuit) fail("duplicate QUBITS line");
            if (!(words >> n) || n < 1 || n > 24) fail("QUBITS needs a count in [1, 24]");
            circuit.emplace(n);
        } else {
            const auto kind = parse_kind(head);
            if (!kind) fail("unknown gate '" + head + "'");
            if (!circuit) fail("gate before QUBITS line");
            std::vector<int> targets;
            int q = 0;
            while (words >> q) targets.push_back(q);
            if (!words.eof()) fail("non-integer qubit index");
            try {
                circuit->add(*kind, std::move(targets));
            } catch (const std::invalid_argument& e) {
                fail(e.what());
            }
        }
        std::string extra;
        if (words.clear(), words >> extra) fail("trailing text '" + extra + "'");
    }
    if (!circuit) throw ParseError("circuit has no QUBITS line");
    return *circuit;
}

Circuit parse_circuit_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_circuit(in);
}

std::string to_text(const Circuit& circuit) {
    std::ostringstream out;
    out << "QUBITS " << circuit.n_qubits() << "\n";
    for (const auto& g : circuit.gates()) {
        out << name(g.kind);
        for (int q : g.targets) out << ' ' << q;
        out << "\n";
    }
    return out.str();
}

}  // namespace optport::gates
