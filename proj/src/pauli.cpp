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

#include "mqnc/pauli.hpp"

namespace mqnc {

char pauli_char(Pauli p) {
    switch (p) {
        case Pauli::I:
            return 'I';
        case Pauli::X:
            return 'X';
        case Pauli::Y:
            return 'Y';
        case Pauli::Z:
            return 'Z';
    }
    return '?';
}

Pauli parse_pauli(char c) {
    switch (c) {
        case 'I':
        case '_':
            return Pauli::I;
        case 'X':
            return Pauli::X;
        case 'Y':
            return Pauli::Y;
        case 'Z':
            return Pauli::Z;
        default:
            throw std::invalid_argument(std::string("not a Pauli: '") + c + "'");
    }
}

std::string PauliPair::str() const { return {pauli_char(first), pauli_char(second)}; }

PauliPair PauliPair::parse(std::string_view text) {
    if (text.size() != 2) {
        throw std::invalid_argument("a Pauli pair needs exactly two characters, got '" + std::string(text) + "'");
    }
    return {parse_pauli(text[0]), parse_pauli(text[1])};
}

PauliFrame::PauliFrame(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 0 || num_qubits > kMaxQubits) {
        throw std::out_of_range("PauliFrame supports 0.." + std::to_string(kMaxQubits) + " qubits");
    }
}

void PauliFrame::check(int q) const {
    if (q < 0 || q >= num_qubits_) {
        throw std::out_of_range("qubit " + std::to_string(q) + " outside frame of size " + std::to_string(num_qubits_));
    }
}

void PauliFrame::check_pair(int a, int b) const {
    check(a);
    check(b);
    if (a == b) {
        throw std::invalid_argument("two-qubit operation on a single qubit " + std::to_string(a));
    }
}

Pauli PauliFrame::get(int q) const {
    check(q);
    return make_pauli((x_ >> q) & 1, (z_ >> q) & 1);
}

void PauliFrame::set(int q, Pauli p) {
    check(q);
    uint32_t m = uint32_t{1} << q;
    x_ = x_bit(p) ? (x_ | m) : (x_ & ~m);
    z_ = z_bit(p) ? (z_ | m) : (z_ & ~m);
}

void PauliFrame::apply(int q, Pauli p) {
    check(q);
    x_ ^= uint32_t{x_bit(p)} << q;
    z_ ^= uint32_t{z_bit(p)} << q;
}

void PauliFrame::apply(int a, int b, PauliPair p) {
    check_pair(a, b);
    apply(a, p.first);
    apply(b, p.second);
}

PauliPair PauliFrame::pair(int a, int b) const { return {get(a), get(b)}; }

void PauliFrame::conjugate_1q(int q, Clifford1 gate) { set(q, mqnc::conjugate_1q(get(q), gate)); }

void PauliFrame::conjugate_cz(int a, int b) {
    check_pair(a, b);
    uint32_t xa = (x_ >> a) & 1;
    uint32_t xb = (x_ >> b) & 1;
    z_ ^= (xa << b) | (xb << a);
}

void PauliFrame::conjugate_cnot(int control, int target) {
    check_pair(control, target);
    x_ ^= ((x_ >> control) & 1) << target;
    z_ ^= ((z_ >> target) & 1) << control;
}

std::string PauliFrame::str() const {
    std::string out;
    out.reserve(static_cast<size_t>(num_qubits_));
    for (int q = 0; q < num_qubits_; q++) {
        out.push_back(pauli_char(get(q)));
    }
    return out;
}

}  // namespace mqnc
