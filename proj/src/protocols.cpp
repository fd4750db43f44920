// Copyright 2026 The mqnc-sim Authors
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

#include "mqnc/protocols.hpp"

#include <array>
#include <span>
#include <sstream>
#include <stdexcept>

namespace mqnc {

CircuitBuilder::CircuitBuilder(ProtocolId id, int qubit_count) {
    circuit_.protocol = id;
    circuit_.qubit_count = qubit_count;
}

TimeStep &CircuitBuilder::current() {
    if (circuit_.steps.empty()) {
        step();
    }
    return circuit_.steps.back();
}

CircuitBuilder &CircuitBuilder::step() {
    circuit_.steps.emplace_back();
    return *this;
}

CircuitBuilder &CircuitBuilder::entangle(PairKind kind, int a, int b) {
    current().ops.emplace_back(Entangle{kind, a, b});
    return *this;
}

CircuitBuilder &CircuitBuilder::gate1(Gate1Kind gate, int q) {
    current().ops.emplace_back(Gate1{gate, q});
    return *this;
}

CircuitBuilder &CircuitBuilder::cz(int a, int b) {
    current().ops.emplace_back(Gate2{Gate2Kind::CZ, a, b});
    return *this;
}

CircuitBuilder &CircuitBuilder::cnot(int control, int target) {
    current().ops.emplace_back(Gate2{Gate2Kind::CNOT, control, target});
    return *this;
}

int CircuitBuilder::new_label(int q) {
    circuit_.labels.push_back("t" + std::to_string(q));
    return static_cast<int>(circuit_.labels.size()) - 1;
}

CircuitBuilder &CircuitBuilder::measure(Basis basis, int q) {
    int label = new_label(q);
    current().ops.emplace_back(Measure{basis, q, label});
    return *this;
}

CircuitBuilder &CircuitBuilder::measure_pair(int a, int b) {
    int la = new_label(a);
    int lb = new_label(b);
    current().ops.emplace_back(MeasurePair{a, b, la, lb});
    return *this;
}

uint64_t CircuitBuilder::condition(std::initializer_list<int> measured) const {
    uint64_t mask = 0;
    for (int q : measured) {
        int k = circuit_.label_index("t" + std::to_string(q));
        if (k < 0) {
            throw std::logic_error("byproduct conditioned on unmeasured qubit " + std::to_string(q));
        }
        mask ^= uint64_t{1} << k;
    }
    return mask;
}

CircuitBuilder &CircuitBuilder::byproduct(Pauli pauli, int q, std::initializer_list<int> cond) {
    current().ops.emplace_back(Byproduct{pauli, q, condition(cond)});
    return *this;
}

CircuitBuilder &CircuitBuilder::output(int a, int b, PairKind kind) {
    circuit_.outputs.push_back({a, b, kind});
    return *this;
}

Circuit CircuitBuilder::build() const {
    auto violations = validate(circuit_);
    if (!violations.empty()) {
        std::ostringstream msg;
        msg << protocol_name(circuit_.protocol) << " circuit is invalid:";
        for (const auto &v : violations) {
            msg << "\n  step " << v.step << ": " << v.message;
        }
        throw std::logic_error(msg.str());
    }
    return circuit_;
}

namespace {

constexpr Pauli X = Pauli::X;
constexpr Pauli Z = Pauli::Z;

CircuitBuilder with_links(ProtocolId id, int n, PairKind kind, std::span<const std::pair<int, int>> links) {
    CircuitBuilder b(id, n);
    b.step();
    for (auto [u, v] : links) {
        b.entangle(kind, u, v);
    }
    b.step();
    return b;
}

// Butterfly link pairs for the 14-qubit protocols. The sources hold {0,2} and
// {4,6}, the targets {1,11} and {5,13}; the relays share the bottleneck (8,9).
constexpr std::array<std::pair<int, int>, 7> kButterflyLinks{{{0, 1}, {2, 3}, {4, 5}, {6, 7}, {8, 9}, {10, 11}, {12, 13}}};

Circuit build_mqnc() {
    const auto C = PairKind::TwoQubitCluster;
    auto b = with_links(ProtocolId::MQNC, 14, C, kButterflyLinks);
    b.output(0, 5, C).output(1, 4, C);

    // Local CZs fuse the link clusters at every node. Relay r1 holds {3,7,9}
    // and r2 holds {8,10,12}, so their stars need two layers.
    b.step().cz(0, 2).cz(4, 6).cz(3, 9).cz(8, 10).cz(1, 11).cz(5, 13);
    b.step().cz(7, 9).cz(8, 12);

    // Remove the relay vertices. Qubits next to an end node are Y-measured and
    // those next to the bottleneck are X-measured, which acts as a Y measurement
    // once the neighbouring removal has complemented the local graph.
    b.step()
        .measure(Basis::Y, 2)
        .measure(Basis::X, 3)
        .measure(Basis::Y, 6)
        .measure(Basis::X, 7)
        .measure(Basis::X, 10)
        .measure(Basis::Y, 11)
        .measure(Basis::X, 12)
        .measure(Basis::Y, 13);

    b.step()
        .byproduct(Z, 9, {2})
        .byproduct(Z, 8, {11})
        .byproduct(X, 5, {3, 10, 12})
        .byproduct(X, 4, {3, 7, 10});
    b.step()
        .byproduct(Z, 9, {6})
        .byproduct(Z, 8, {13})
        .byproduct(Z, 5, {3, 7, 12})
        .byproduct(Z, 4, {7, 10, 12});
    // Outcome-independent parts of the two phase corrections at each bottleneck qubit.
    b.step().byproduct(Z, 9).byproduct(Z, 8);

    b.step().measure(Basis::X, 8).measure(Basis::X, 9);
    b.step()
        .byproduct(X, 0, {9})
        .byproduct(X, 4, {9})
        .byproduct(X, 1, {8})
        .byproduct(X, 5, {8});
    return b.build();
}

Circuit build_qnc() {
    const auto B = PairKind::BellPhiPlus;
    auto b = with_links(ProtocolId::QNC, 14, B, kButterflyLinks);
    b.output(0, 5, B).output(1, 4, B);
    using G = Gate1Kind;

    // GHZ states at the sources: (0,1,3) and (4,5,7).
    b.step().cnot(0, 2).cnot(4, 6);
    b.step().measure(Basis::Z, 2).measure(Basis::Z, 6);
    b.step().byproduct(X, 3, {2}).byproduct(X, 7, {6});

    // Bottleneck parity of the two source qubits at relay r1, written onto 8.
    b.step().cnot(3, 8);
    b.step().cnot(7, 8);
    b.step().measure(Basis::Z, 8);
    b.step().byproduct(X, 9, {8});

    // FANOUT of the parity at relay r2 towards both targets.
    b.step().cnot(9, 10);
    b.step().cnot(9, 12);
    b.step().measure(Basis::Z, 10).measure(Basis::Z, 12);
    b.step().byproduct(X, 11, {10}).byproduct(X, 13, {12});

    // Targets extract the other source's value.
    b.step().cnot(11, 1).cnot(13, 5);
    b.step().gate1(G::H, 11).gate1(G::H, 13);
    b.step().measure(Basis::Z, 11).measure(Basis::Z, 13);

    // X-basis removals of the remaining intermediate qubits; each outcome
    // feeds a Z correction one hop away.
    b.step().byproduct(Z, 9, {11});
    b.step().byproduct(Z, 9, {13});
    b.step().gate1(G::H, 9);
    b.step().measure(Basis::Z, 9);
    b.step().byproduct(Z, 1, {9}).byproduct(Z, 5, {9}).gate1(G::H, 3).gate1(G::H, 7);
    b.step().measure(Basis::Z, 3).measure(Basis::Z, 7);
    b.step().byproduct(Z, 0, {3}).byproduct(Z, 4, {7});
    return b.build();
}

// Two-hop repeater chains for ES and ESP:
//   path A: 0 -(0,7)- 7|6 -(6,9)- 9|8 -(8,5)- 5
//   path B: 4 -(4,11)- 11|10 -(10,3)- 3|2 -(2,1)- 1
constexpr std::array<std::pair<int, int>, 6> kChainLinks{{{0, 7}, {6, 9}, {8, 5}, {4, 11}, {10, 3}, {2, 1}}};

Circuit build_es() {
    const auto B = PairKind::BellPhiPlus;
    auto b = with_links(ProtocolId::ES, 12, B, kChainLinks);
    b.output(0, 5, B).output(1, 4, B);
    using G = Gate1Kind;

    b.step().cnot(7, 6).cnot(11, 10);
    b.step().gate1(G::H, 7).gate1(G::H, 11);
    b.step().measure_pair(7, 6).measure_pair(11, 10);
    b.step().byproduct(X, 9, {6}).byproduct(X, 3, {10});
    b.step().byproduct(Z, 9, {7}).byproduct(Z, 3, {11});

    b.step().cnot(9, 8).cnot(3, 2);
    b.step().gate1(G::H, 9).gate1(G::H, 3);
    b.step().measure_pair(9, 8).measure_pair(3, 2);
    b.step().byproduct(X, 5, {8}).byproduct(X, 1, {2});
    b.step().byproduct(Z, 5, {9}).byproduct(Z, 1, {3});
    return b.build();
}

Circuit build_esp() {
    const auto B = PairKind::BellPhiPlus;
    auto b = with_links(ProtocolId::ESP, 12, B, kChainLinks);
    b.output(0, 5, B).output(1, 4, B);
    using G = Gate1Kind;

    b.step().cnot(7, 6).cnot(11, 10).cnot(9, 8).cnot(3, 2);
    b.step().gate1(G::H, 7).gate1(G::H, 11).gate1(G::H, 9).gate1(G::H, 3);
    b.step().measure_pair(7, 6).measure_pair(11, 10).measure_pair(9, 8).measure_pair(3, 2);
    // Deferred corrections, merged per output pair; X and Z land on opposite ends.
    b.step()
        .byproduct(X, 5, {6, 8})
        .byproduct(Z, 0, {7, 9})
        .byproduct(X, 1, {10, 2})
        .byproduct(Z, 4, {11, 3});
    return b.build();
}

}  // namespace

Circuit build_protocol(ProtocolId id) {
    switch (id) {
        case ProtocolId::MQNC:
            return build_mqnc();
        case ProtocolId::QNC:
            return build_qnc();
        case ProtocolId::ES:
            return build_es();
        case ProtocolId::ESP:
            return build_esp();
    }
    throw std::invalid_argument("unknown protocol id");
}

}  // namespace mqnc
