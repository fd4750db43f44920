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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mqnc/circuit.hpp"
#include "mqnc/pauli.hpp"

namespace mqnc {

/// The four phase-free stabilizers of an ideal output pair, identity first.
std::array<PauliPair, 4> stabilizer_group(PairKind kind);

/// Canonical coset representative modulo the output's stabilizer group: the
/// member with the smallest index in I < X < Y < Z order. Stabilizers map to II.
PauliPair fold(PauliPair residual, PairKind kind);

/// Precomputed fold over all 16 indices for both kinds.
const std::array<uint8_t, 16> &fold_table(PairKind kind);

struct ErrorHistogram {
    std::array<uint64_t, 16> counts{};

    void add(PauliPair p, uint64_t n = 1) { counts[static_cast<size_t>(p.index())] += n; }
    uint64_t total() const;
    uint64_t errors() const { return total() - counts[0]; }
    double probability(PauliPair p) const;
    ErrorHistogram &operator+=(const ErrorHistogram &other);
    bool operator==(const ErrorHistogram &) const = default;
};

struct OutputHistograms {
    OutputPair pair;
    ErrorHistogram raw;
    ErrorHistogram folded;

    bool operator==(const OutputHistograms &o) const {
        return pair.a == o.pair.a && pair.b == o.pair.b && pair.kind == o.pair.kind && raw == o.raw &&
               folded == o.folded;
    }
};

/// Statistics of one sweep coordinate.
struct DataPoint {
    double coordinate = 0;
    std::string protocol;
    uint64_t trials = 0;
    uint64_t errors = 0;
    double fidelity = 0;
    double ci_low = 0;
    double ci_high = 0;
    std::vector<OutputHistograms> outputs;

    bool operator==(const DataPoint &) const = default;
};

/// 1 - errors / trials. Throws std::invalid_argument for zero trials.
double joint_fidelity(const DataPoint &point);

/// Wilson score interval for a binomial proportion.
std::pair<double, double> wilson_interval(uint64_t successes, uint64_t trials, double z = 1.959963984540054);

struct Series {
    std::string protocol;
    std::vector<DataPoint> points;
};

/// x of the first crossing of `level` by linear interpolation, or nothing.
std::optional<double> crossing(const std::vector<std::pair<double, double>> &xy, double level);
/// Crossing of the joint-fidelity curve.
std::optional<double> crossing(const Series &series, double level);

/// Per-class probability curves of one output versus the sweep coordinate.
struct DistributionSeries {
    std::vector<double> coordinates;
    std::array<std::vector<double>, 16> curves;
};
DistributionSeries distribution_series(const std::vector<DataPoint> &points, size_t output = 0, bool folded = true);

/// CSV with one row per (protocol, coordinate). With `histograms`, appends
/// out<k>_raw_<PP> and out<k>_folded_<PP> columns for each output.
std::string series_csv(const std::vector<Series> &series, bool histograms);
std::string series_json(const std::vector<Series> &series, bool histograms);

}  // namespace mqnc
