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

#include <optional>
#include <string>
#include <vector>

#include "mqnc/engine.hpp"

namespace mqnc {

struct ExperimentPreset {
    std::string name;
    std::string title;
    SweepSpec spec;
    /// Set for configs that give error probabilities directly: one data point
    /// per protocol with this model instead of a sweep.
    std::optional<NoiseModel> fixed_model;
    /// Collect and export per-class histograms.
    bool histograms = false;
    /// What the run should show, for the summary.
    std::string expected;
};

/// fig7, fig8, fig9, fig10, fig11, dist9898, fig13, fig14, appendixB.
const std::vector<ExperimentPreset> &presets();
/// Throws std::invalid_argument listing the known names.
const ExperimentPreset &find_preset(const std::string &name);

/// An experiment described by `key = value` lines. Either a sweep (variable,
/// start, stop, step, f_input, f_operation, f_memory) or a fixed noise model
/// (the p_* keys of a noise config). Shared keys: protocols, init_bias,
/// memory_ideal, charge_byproducts_always, memory_on_active, seed,
/// max_errors, max_trials, histograms, name.
ExperimentPreset parse_experiment_config(std::string_view text);
ExperimentPreset load_experiment_config(const std::string &path);

}  // namespace mqnc
