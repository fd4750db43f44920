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

#include "mqnc/circuit.hpp"

namespace mqnc {

/// Builds the full circuit of a protocol, initialization steps included.
///
/// Qubit numbering: the 14-qubit protocols use link pairs (0,1), (2,3), ...,
/// (12,13); ES and ESP use 12 qubits and keep the end-point labels 0, 1, 4, 5.
/// Every outcome label is named after the qubit that produced it ("t9").
Circuit build_protocol(ProtocolId id);

/// Incremental circuit construction with label bookkeeping.
class CircuitBuilder {
   public:
    CircuitBuilder(ProtocolId id, int qubit_count);

    /// Opens a new time step. Operations added afterwards go into it.
    CircuitBuilder &step();
    CircuitBuilder &entangle(PairKind kind, int a, int b);
    CircuitBuilder &gate1(Gate1Kind gate, int q);
    CircuitBuilder &cz(int a, int b);
    CircuitBuilder &cnot(int control, int target);
    CircuitBuilder &measure(Basis basis, int q);
    CircuitBuilder &measure_pair(int a, int b);
    /// `condition` lists qubits whose outcomes are XORed; empty means unconditional.
    CircuitBuilder &byproduct(Pauli pauli, int q, std::initializer_list<int> condition = {});
    CircuitBuilder &output(int a, int b, PairKind kind);

    /// Bitmask of the labels produced by measuring the listed qubits.
    uint64_t condition(std::initializer_list<int> measured) const;

    Circuit build() const;

   private:
    int new_label(int q);
    TimeStep &current();

    Circuit circuit_;
};

}  // namespace mqnc
