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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mqnc/pauli.hpp"

namespace mqnc {

enum class ProtocolId : uint8_t { MQNC, QNC, ES, ESP };

/// Two-qubit entangled state: the kind of a link resource and of a protocol output.
enum class PairKind : uint8_t { BellPhiPlus, TwoQubitCluster };

enum class Gate1Kind : uint8_t { H, S, X, Y, Z };
enum class Gate2Kind : uint8_t { CZ, CNOT };

/// Creates a link resource. Occupies the two initialization time steps.
struct Entangle {
    PairKind kind;
    int a;
    int b;
};

struct Gate1 {
    Gate1Kind gate;
    int q;
};

/// For CNOT, `a` is the control and `b` the target.
struct Gate2 {
    Gate2Kind gate;
    int a;
    int b;
};

struct Measure {
    Basis basis;
    int q;
    int label;
};

/// Z-basis readout of both qubits of a Bell measurement. Counts as one measurement.
struct MeasurePair {
    int a;
    int b;
    int label_a;
    int label_b;
};

/// Classically conditioned Pauli correction. Fires when the XOR of the outcomes
/// selected by `condition` (bit k = label k) is 1; an empty condition always fires.
struct Byproduct {
    Pauli pauli;
    int q;
    uint64_t condition;
};

using Operation = std::variant<Entangle, Gate1, Gate2, Measure, MeasurePair, Byproduct>;

/// Qubits touched by an operation, in operand order (at most two).
struct Support {
    int count = 0;
    int qubits[2] = {-1, -1};
    const int *begin() const { return qubits; }
    const int *end() const { return qubits + count; }
};
Support support(const Operation &op);

struct TimeStep {
    std::vector<Operation> ops;
};

struct OutputPair {
    int a;
    int b;
    PairKind kind;
};

struct ResourcePair {
    int a;
    int b;
    PairKind kind;
};

/// Number of leading time steps used to prepare link resources.
inline constexpr int kInitSteps = 2;
inline constexpr int kMaxLabels = 64;

struct Circuit {
    ProtocolId protocol = ProtocolId::MQNC;
    int qubit_count = 0;
    std::vector<TimeStep> steps;
    std::vector<std::string> labels;
    std::vector<OutputPair> outputs;

    std::vector<ResourcePair> resource_pairs() const;
    int label_index(std::string_view name) const;
    size_t depth() const { return steps.size(); }
};

/// Pauli inserted at the start of a time step (at the very end when step == depth).
struct Injection {
    int step;
    int qubit;
    Pauli pauli;
};

struct Violation {
    int step;
    std::string message;
};

/// Checks every structural invariant; returns an empty list for a valid circuit.
std::vector<Violation> validate(const Circuit &circuit);

/// Resource counts of a circuit. Byproducts are included in `single_qubit_gates`.
struct CircuitStats {
    int qubits = 0;
    int entangling_ops = 0;
    int single_qubit_gates = 0;
    int byproduct_count = 0;
    int two_qubit_gates = 0;
    int measurements = 0;
    int depth = 0;
    int kq = 0;

    bool operator==(const CircuitStats &) const = default;
};

/// Depth counts every time step, including the two initialization steps.
CircuitStats compute_stats(const Circuit &circuit);

/// Relative depth saving of `a` over `b`: (b.depth - a.depth) / b.depth.
double depth_reduction(const CircuitStats &a, const CircuitStats &b);

/// Greedy as-soon-as-possible repacking that keeps per-qubit order, the
/// initialization block and one step of classical feedforward delay.
Circuit reschedule_asap(const Circuit &circuit);

std::string protocol_name(ProtocolId id);
ProtocolId parse_protocol(std::string_view name);
std::string pair_kind_name(PairKind kind);

std::string format_operation(const Circuit &circuit, const Operation &op);
/// Line-oriented text form: a header followed by one `step` line per time step.
std::string to_text(const Circuit &circuit);
Circuit parse_circuit(std::string_view text);

}  // namespace mqnc
