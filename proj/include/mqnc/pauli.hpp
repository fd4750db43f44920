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

#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mqnc {

/// Phase-free single-qubit Pauli in symplectic form: bit 0 is the X component,
/// bit 1 the Z component. Composition is XOR.
enum class Pauli : uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

enum class Basis : uint8_t { X, Y, Z };

enum class Clifford1 : uint8_t { H, S };

constexpr bool x_bit(Pauli p) { return (static_cast<uint8_t>(p) & 1) != 0; }
constexpr bool z_bit(Pauli p) { return (static_cast<uint8_t>(p) & 2) != 0; }
constexpr Pauli make_pauli(bool x, bool z) { return static_cast<Pauli>((x ? 1 : 0) | (z ? 2 : 0)); }

constexpr Pauli compose(Pauli p, Pauli q) {
    return static_cast<Pauli>(static_cast<uint8_t>(p) ^ static_cast<uint8_t>(q));
}

constexpr Pauli basis_pauli(Basis b) {
    switch (b) {
        case Basis::X:
            return Pauli::X;
        case Basis::Y:
            return Pauli::Y;
        case Basis::Z:
            return Pauli::Z;
    }
    return Pauli::I;
}

/// True iff the two Paulis anticommute (symplectic inner product is 1).
constexpr bool anticommute(Pauli p, Pauli q) {
    return ((x_bit(p) && z_bit(q)) != (z_bit(p) && x_bit(q)));
}

/// True iff an error `p` flips a readout in `basis`.
constexpr bool anticommutes(Pauli p, Basis basis) { return anticommute(p, basis_pauli(basis)); }

constexpr Pauli conjugate_1q(Pauli p, Clifford1 gate) {
    bool x = x_bit(p);
    bool z = z_bit(p);
    if (gate == Clifford1::H) {
        return make_pauli(z, x);
    }
    // S: X -> Y, Y -> X, Z -> Z.
    return make_pauli(x, z != x);
}

/// Position in the I < X < Y < Z ordering used for labels and canonical representatives.
constexpr int lex_rank(Pauli p) {
    switch (p) {
        case Pauli::I:
            return 0;
        case Pauli::X:
            return 1;
        case Pauli::Y:
            return 2;
        case Pauli::Z:
            return 3;
    }
    return 0;
}

constexpr Pauli from_lex_rank(int r) {
    constexpr std::array<Pauli, 4> order{Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};
    return order[static_cast<size_t>(r & 3)];
}

char pauli_char(Pauli p);
Pauli parse_pauli(char c);

/// Two-qubit phase-free Pauli. `first` acts on the lower-indexed qubit.
struct PauliPair {
    Pauli first = Pauli::I;
    Pauli second = Pauli::I;

    constexpr bool is_identity() const { return first == Pauli::I && second == Pauli::I; }
    constexpr bool operator==(const PauliPair &) const = default;

    /// Index 0..15 in lexicographic I<X<Y<Z order ("II" = 0, "IX" = 1, ..., "ZZ" = 15).
    constexpr int index() const { return 4 * lex_rank(first) + lex_rank(second); }
    static constexpr PauliPair from_index(int k) { return {from_lex_rank(k >> 2), from_lex_rank(k & 3)}; }

    std::string str() const;
    static PauliPair parse(std::string_view text);
};

constexpr PauliPair compose(PauliPair a, PauliPair b) {
    return {compose(a.first, b.first), compose(a.second, b.second)};
}

constexpr bool anticommute(PauliPair a, PauliPair b) {
    return anticommute(a.first, b.first) != anticommute(a.second, b.second);
}

/// Per-qubit accumulated Pauli error of a register with at most 32 qubits, stored
/// as two bitmasks so conjugation through Clifford gates is a handful of bit ops.
class PauliFrame {
   public:
    static constexpr int kMaxQubits = 32;

    PauliFrame() = default;
    explicit PauliFrame(int num_qubits);

    int size() const { return num_qubits_; }
    Pauli get(int q) const;
    void set(int q, Pauli p);
    /// Multiplies `p` into qubit q.
    void apply(int q, Pauli p);
    void apply(int a, int b, PauliPair p);
    PauliPair pair(int a, int b) const;
    bool is_identity() const { return x_ == 0 && z_ == 0; }
    void clear() { x_ = z_ = 0; }

    void conjugate_1q(int q, Clifford1 gate);
    void conjugate_cz(int a, int b);
    void conjugate_cnot(int control, int target);

    uint32_t x_mask() const { return x_; }
    uint32_t z_mask() const { return z_; }

    bool operator==(const PauliFrame &) const = default;
    std::string str() const;

   private:
    void check(int q) const;
    void check_pair(int a, int b) const;

    int num_qubits_ = 0;
    uint32_t x_ = 0;
    uint32_t z_ = 0;
};

}  // namespace mqnc
