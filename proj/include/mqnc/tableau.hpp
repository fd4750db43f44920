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
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "mqnc/circuit.hpp"

namespace mqnc {

/// Signed Pauli string on up to 64 qubits.
struct PauliString {
    int n = 0;
    uint64_t xs = 0;
    uint64_t zs = 0;
    bool negative = false;

    Pauli get(int q) const { return make_pauli((xs >> q) & 1, (zs >> q) & 1); }
    void set(int q, Pauli p);

    /// Parses a sparse form such as "X0 Z5" or "-Z1 X4".
    static PauliString from_sparse(std::string_view text, int n);
    /// Parses a dense form such as "+XZ_Y" (one character per qubit).
    static PauliString from_dense(std::string_view text);

    std::string str() const;
    bool operator==(const PauliString &) const = default;
};

/// Aaronson-Gottesman stabilizer tableau with destabilizers.
class Tableau {
   public:
    static constexpr int kMaxQubits = 64;

    /// The all-|0> state on n qubits.
    explicit Tableau(int n, uint64_t seed = 0);

    int size() const { return n_; }

    void h(int q);
    void s(int q);
    void s_dag(int q);
    void x(int q);
    void y(int q);
    void z(int q);
    void cz(int a, int b);
    void cnot(int control, int target);
    void apply_pauli(int q, Pauli p);

    struct Outcome {
        bool value;
        bool deterministic;
    };
    /// Projective Z measurement. A random outcome takes `forced` when given and
    /// is drawn from the internal generator otherwise. Forcing the wrong value
    /// of a deterministic outcome throws std::logic_error.
    Outcome measure_z(int q, std::optional<bool> forced = std::nullopt);
    /// Measurement in any basis; the qubit is left in the measured eigenstate.
    Outcome measure(Basis basis, int q, std::optional<bool> forced = std::nullopt);
    /// True iff measuring Z on q would be random.
    bool is_random_z(int q) const;
    bool is_random_basis(Basis basis, int q) const;

    /// True iff `p` (with its sign) lies in the stabilizer group.
    bool stabilizes(const PauliString &p) const;
    std::vector<PauliString> stabilizers() const;
    /// Rows commute as required and the destabilizer/stabilizer pairing holds.
    bool is_consistent() const;

   private:
    struct Row {
        uint64_t x = 0;
        uint64_t z = 0;
        bool r = false;
    };
    void check(int q) const;
    static void rowmult(Row &into, const Row &from);

    int n_;
    std::vector<Row> rows_;  // destabilizers [0, n), stabilizers [n, 2n)
    std::mt19937_64 rng_;
};

/// Prepares the ideal resource state of a link pair on |00>.
void prepare_pair(Tableau &t, PairKind kind, int a, int b);

/// The two generators of an ideal output pair, on qubits (a, b).
std::vector<PauliString> output_generators(const OutputPair &out, int n);

/// Supplies measurement outcomes for random readouts during an ideal run.
struct OutcomePolicy {
    enum class Kind { Forced, Random } kind = Kind::Random;
    /// Random readouts consume these bits in order (Forced).
    std::vector<bool> bits;
    uint64_t seed = 0;
};

/// Result of one exact run of a circuit.
struct TableauRun {
    Tableau tableau;
    std::vector<bool> outcomes;  // by label
    std::vector<bool> random;    // by label: was the readout random
};

/// Called after every time step with the state and the outcomes so far.
using StepHook = std::function<void(int step, const Tableau &, const std::vector<bool> &outcomes)>;

/// Executes a circuit on the tableau. Byproducts use the recorded outcomes.
TableauRun run_tableau(const Circuit &circuit, const OutcomePolicy &policy,
                       const std::vector<Injection> &injections = {}, const StepHook &hook = {});

/// Per output pair, bit k is set iff generator k of the ideal pair is stabilized
/// with a minus sign. Throws if neither sign is stabilized.
std::vector<uint8_t> output_syndrome(const Circuit &circuit, const Tableau &t);

/// A signed stabilizer expected at a checkpoint. The sign is (-1)^(XOR of the
/// outcomes selected by `sign_labels`).
struct SignedCheck {
    std::string name;
    PauliString pauli;
    uint64_t sign_labels = 0;
};

/// Expected stabilizers after a given full time-step index.
struct Waypoint {
    std::string name;
    int after_step;
    std::vector<SignedCheck> checks;
};

/// Signed intermediate stabilizers of MQNC after the bottleneck measurements and
/// the GHZ states of QNC; none for ES/ESP.
std::vector<Waypoint> protocol_waypoints(const Circuit &circuit);

struct BranchFailure {
    uint64_t branch = 0;
    std::vector<std::pair<std::string, int>> assignment;  // label -> outcome
    std::string check;
    std::string generator;
};

struct VerifyReport {
    std::string protocol;
    bool exhaustive = true;
    uint64_t branches = 0;
    uint64_t failed_branches = 0;
    std::vector<std::string> checks;  // names of all checks evaluated per branch
    std::optional<BranchFailure> first_failure;

    bool passed() const { return branches > 0 && failed_branches == 0; }
    std::string text() const;
    std::string json() const;
};

/// Runs the ideal circuit over every measurement branch (or 256 sampled ones
/// when more than 12 readouts are random) and checks outputs and waypoints.
VerifyReport verify_protocol(const Circuit &circuit, uint64_t seed = 1);

}  // namespace mqnc
