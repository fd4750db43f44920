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

#include <string>
#include <string_view>

#include "mqnc/circuit.hpp"
#include "mqnc/pauli.hpp"
#include "mqnc/rng.hpp"

namespace mqnc {

enum class InitBias : uint8_t {
    /// Uniform over the 15 non-identity Pauli pairs.
    UniformAll15,
    /// Z on the odd-labelled qubit of each pair.
    ZOnOdd,
    /// X on the odd-labelled qubit of each pair.
    XOnOdd,
};

std::string init_bias_name(InitBias bias);
InitBias parse_init_bias(std::string_view name);

/// Error probabilities. Fidelities map to probabilities as p = 1 - F.
struct NoiseModel {
    double p_init = 0;
    InitBias init_bias = InitBias::UniformAll15;
    double p_gate1 = 0;
    double p_gate2 = 0;
    double p_meas = 0;
    /// Per idle qubit per time step.
    double p_mem = 0;
    bool memory_ideal = false;
    /// Charge gate noise on every byproduct, not only those that fire.
    bool charge_byproducts_always = false;
    /// Also charge memory error to qubits that are busy in a step.
    bool memory_on_active = false;

    /// Throws std::invalid_argument unless every probability lies in [0, 1].
    void validate() const;
    bool is_noiseless() const;

    /// `key = value` lines; `#` starts a comment. Unknown keys are rejected.
    static NoiseModel parse_config(std::string_view text);
    static NoiseModel load_config(const std::string &path);
    std::string to_config() const;

    bool operator==(const NoiseModel &) const = default;
};

/// Picks one of k equally likely non-identity classes with total probability p,
/// from a single uniform draw. Returns 0 for "no error", else 1..k.
inline int sample_class(double p, int k, TrialRng &rng) {
    if (p <= 0) {
        return 0;
    }
    double u = rng.uniform();
    if (u >= p) {
        return 0;
    }
    int c = static_cast<int>(static_cast<double>(k) * u / p);
    return 1 + (c < k ? c : k - 1);
}

inline Pauli single_qubit_class(int c) {
    // 1 -> X, 2 -> Y, 3 -> Z
    return from_lex_rank(c);
}

/// Input error of a link pair, in ascending qubit order. Biased modes need
/// exactly one odd-labelled qubit in the pair.
PauliPair sample_initial(const ResourcePair &pair, const NoiseModel &model, TrialRng &rng);

inline Pauli sample_gate1(const NoiseModel &model, TrialRng &rng) {
    return single_qubit_class(sample_class(model.p_gate1, 3, rng));
}

/// Two-qubit depolarizing: uniform over the 15 non-identity pairs.
inline PauliPair sample_gate2(const NoiseModel &model, TrialRng &rng) {
    return PauliPair::from_index(sample_class(model.p_gate2, 15, rng));
}

/// Pauli injected just before a readout; its anticommuting part flips the result.
inline Pauli sample_measurement(const NoiseModel &model, TrialRng &rng) {
    return single_qubit_class(sample_class(model.p_meas, 3, rng));
}

inline Pauli sample_memory(const NoiseModel &model, TrialRng &rng) {
    if (model.memory_ideal) {
        return Pauli::I;
    }
    return single_qubit_class(sample_class(model.p_mem, 3, rng));
}

}  // namespace mqnc
