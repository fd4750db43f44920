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
#include <functional>
#include <optional>
#include <vector>

#include "mqnc/analysis.hpp"
#include "mqnc/circuit.hpp"
#include "mqnc/noise.hpp"
#include "mqnc/rng.hpp"

namespace mqnc {

struct TrialOutcome {
    std::array<PauliPair, 2> raw;
    std::array<PauliPair, 2> folded;
    bool any_error = false;
};

struct TerminationRule {
    uint64_t max_errors = 20000;
    uint64_t max_trials = 1000000;

    void validate() const;
};

/// Pauli-frame simulator for one circuit, compiled to flat bitmask instructions.
///
/// Each measurement records whether its outcome is flipped relative to the
/// ideal run. A byproduct multiplies its Pauli into the frame when the flips
/// over its condition have odd parity, since the physical correction then
/// differs from the ideal one.
class FrameSimulator {
   public:
    /// Throws std::invalid_argument if the circuit does not validate or does
    /// not have exactly two outputs.
    explicit FrameSimulator(const Circuit &circuit);

    const Circuit &circuit() const { return circuit_; }

    TrialOutcome run_trial(const NoiseModel &model, TrialRng &rng) const;
    /// Noise-free run with explicit Pauli insertions.
    TrialOutcome run_injected(const std::vector<Injection> &injections) const;

    /// Raw output residual indices, packed as raw0 | raw1 << 4.
    uint8_t run_compact(const NoiseModel &model, TrialRng &rng) const;

   private:
    enum class Kind : uint8_t { H, S, Pauli1, CZ, CNOT, Measure, MeasurePair, Byproduct };
    struct Instr {
        Kind kind;
        uint8_t a;
        uint8_t b;
        uint8_t arg;  // basis for Measure, Pauli for Byproduct
        uint8_t label_a;
        uint8_t label_b;
        uint64_t condition;
    };
    struct Step {
        uint32_t begin;
        uint32_t end;
        uint32_t idle;  // live qubits untouched in this step
        uint32_t live;  // qubits not measured in an earlier step
    };

    template <bool kInject>
    uint8_t simulate(const NoiseModel *model, TrialRng *rng, const std::vector<Injection> *injections) const;
    TrialOutcome expand(uint8_t compact) const;

    Circuit circuit_;
    std::vector<ResourcePair> pairs_;
    std::vector<Instr> instrs_;
    std::vector<Step> steps_;
    std::array<OutputPair, 2> outputs_;
    std::array<const std::array<uint8_t, 16> *, 2> fold_;
};

TrialOutcome run_trial(const Circuit &circuit, const NoiseModel &model, TrialRng &rng);

/// Runs trials (trial i uses TrialRng::for_trial(seed, point_key, i)) until the
/// error count reaches rule.max_errors or rule.max_trials trials have run.
/// The result is identical for any worker count.
DataPoint run_datapoint(const FrameSimulator &sim, const NoiseModel &model, const TerminationRule &rule,
                        uint64_t seed, uint64_t point_key = 0, int workers = 0);
DataPoint run_datapoint(const Circuit &circuit, const NoiseModel &model, const TerminationRule &rule, uint64_t seed,
                        uint64_t point_key = 0, int workers = 0);

enum class SweepVariable : uint8_t { FInput, FOperation, FMemory };
std::string sweep_variable_name(SweepVariable v);
SweepVariable parse_sweep_variable(std::string_view name);

/// A one-dimensional sweep over a fidelity knob. Fidelities are fractions.
struct SweepSpec {
    std::vector<ProtocolId> protocols{ProtocolId::MQNC, ProtocolId::QNC, ProtocolId::ES, ProtocolId::ESP};
    SweepVariable variable = SweepVariable::FInput;
    double start = 0.5;
    double stop = 1.0;
    double step = 0.01;
    /// Fixed values of the knobs that are not swept. Unset means 100%.
    std::optional<double> f_input;
    std::optional<double> f_operation;
    std::optional<double> f_memory;
    InitBias bias = InitBias::UniformAll15;
    bool memory_ideal = false;
    bool charge_byproducts_always = false;
    bool memory_on_active = false;
    TerminationRule rule;
    uint64_t seed = 1;

    /// Throws std::invalid_argument describing the first problem found.
    void validate() const;
    std::vector<double> coordinates() const;
    /// Maps a coordinate to probabilities via p = 1 - F. Sweeping F_operation
    /// moves gate, measurement and memory errors together unless memory is
    /// ideal or F_memory is fixed.
    NoiseModel model_at(double coordinate) const;
};

using ProgressFn = std::function<void(const std::string &protocol, size_t index, size_t count, const DataPoint &)>;

std::vector<Series> run_sweep(const SweepSpec &spec, int workers = 0, const ProgressFn &progress = {});

}  // namespace mqnc
