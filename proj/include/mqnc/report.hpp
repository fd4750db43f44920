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
#include <optional>
#include <string>
#include <vector>

#include "mqnc/presets.hpp"

namespace mqnc {

enum class OutputFormat : uint8_t { Csv, Json };

struct RunOptions {
    std::optional<uint64_t> seed;
    std::optional<uint64_t> max_trials;
    std::optional<uint64_t> max_errors;
    /// Directory for series files; created if missing.
    std::string out_dir = ".";
    OutputFormat format = OutputFormat::Csv;
    bool svg = false;
    bool charge_byproducts_always = false;
    bool memory_on_active = false;
    int workers = 0;
    ProgressFn progress;
};

struct RunReport {
    std::string preset;
    uint64_t seed = 0;
    double wall_seconds = 0;
    std::vector<std::string> files;
    std::vector<std::string> summary;
    std::vector<Series> series;

    std::string text() const;
};

/// The preset after command-line overrides.
ExperimentPreset apply_options(const ExperimentPreset &preset, const RunOptions &options);

/// Runs the sweep (or the fixed model, one point per protocol) without writing files.
std::vector<Series> run_experiment_series(const ExperimentPreset &preset, int workers = 0,
                                          const ProgressFn &progress = {});

/// Crossings, endpoint fidelities and preset-specific values.
std::vector<std::string> summarize(const ExperimentPreset &preset, const std::vector<Series> &series);

/// Runs, writes one series file per protocol, a summary file and optional SVG
/// plots. Throws std::runtime_error if an output file cannot be written.
RunReport run_experiment(const ExperimentPreset &preset, const RunOptions &options);

}  // namespace mqnc
