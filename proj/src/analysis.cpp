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

#include "mqnc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace mqnc {

std::array<PauliPair, 4> stabilizer_group(PairKind kind) {
    using P = Pauli;
    if (kind == PairKind::BellPhiPlus) {
        return {PauliPair{P::I, P::I}, {P::X, P::X}, {P::Y, P::Y}, {P::Z, P::Z}};
    }
    return {PauliPair{P::I, P::I}, {P::X, P::Z}, {P::Z, P::X}, {P::Y, P::Y}};
}

namespace {

std::array<uint8_t, 16> build_fold_table(PairKind kind) {
    std::array<uint8_t, 16> table{};
    auto group = stabilizer_group(kind);
    for (int k = 0; k < 16; k++) {
        PauliPair p = PauliPair::from_index(k);
        int best = 16;
        for (auto s : group) {
            best = std::min(best, compose(p, s).index());
        }
        table[static_cast<size_t>(k)] = static_cast<uint8_t>(best);
    }
    return table;
}

}  // namespace

const std::array<uint8_t, 16> &fold_table(PairKind kind) {
    static const std::array<uint8_t, 16> bell = build_fold_table(PairKind::BellPhiPlus);
    static const std::array<uint8_t, 16> cluster = build_fold_table(PairKind::TwoQubitCluster);
    return kind == PairKind::BellPhiPlus ? bell : cluster;
}

PauliPair fold(PauliPair residual, PairKind kind) {
    return PauliPair::from_index(fold_table(kind)[static_cast<size_t>(residual.index())]);
}

uint64_t ErrorHistogram::total() const { return std::accumulate(counts.begin(), counts.end(), uint64_t{0}); }

double ErrorHistogram::probability(PauliPair p) const {
    uint64_t t = total();
    return t == 0 ? 0.0 : static_cast<double>(counts[static_cast<size_t>(p.index())]) / static_cast<double>(t);
}

ErrorHistogram &ErrorHistogram::operator+=(const ErrorHistogram &other) {
    for (size_t k = 0; k < counts.size(); k++) {
        counts[k] += other.counts[k];
    }
    return *this;
}

double joint_fidelity(const DataPoint &point) {
    if (point.trials == 0) {
        throw std::invalid_argument("joint_fidelity: data point has no trials");
    }
    return 1.0 - static_cast<double>(point.errors) / static_cast<double>(point.trials);
}

std::pair<double, double> wilson_interval(uint64_t successes, uint64_t trials, double z) {
    if (trials == 0) {
        return {0.0, 1.0};
    }
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2 * n)) / denom;
    const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::optional<double> crossing(const std::vector<std::pair<double, double>> &xy, double level) {
    for (size_t i = 0; i + 1 < xy.size(); i++) {
        auto [x0, y0] = xy[i];
        auto [x1, y1] = xy[i + 1];
        if (y0 == level) {
            return x0;
        }
        bool below0 = y0 < level;
        bool below1 = y1 < level;
        if (below0 != below1) {
            return x0 + (level - y0) * (x1 - x0) / (y1 - y0);
        }
    }
    if (!xy.empty() && xy.back().second == level) {
        return xy.back().first;
    }
    return std::nullopt;
}

std::optional<double> crossing(const Series &series, double level) {
    std::vector<std::pair<double, double>> xy;
    xy.reserve(series.points.size());
    for (const auto &p : series.points) {
        xy.emplace_back(p.coordinate, p.fidelity);
    }
    return crossing(xy, level);
}

DistributionSeries distribution_series(const std::vector<DataPoint> &points, size_t output, bool folded) {
    DistributionSeries out;
    for (const auto &p : points) {
        if (output >= p.outputs.size()) {
            throw std::out_of_range("data point has no output " + std::to_string(output));
        }
        out.coordinates.push_back(p.coordinate);
        const auto &h = folded ? p.outputs[output].folded : p.outputs[output].raw;
        for (int k = 0; k < 16; k++) {
            out.curves[static_cast<size_t>(k)].push_back(h.probability(PauliPair::from_index(k)));
        }
    }
    return out;
}

namespace {

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(10);
    s << v;
    return s.str();
}

}  // namespace

std::string series_csv(const std::vector<Series> &series, bool histograms) {
    std::ostringstream out;
    out << "coordinate,protocol,trials,errors,fidelity,ci_low,ci_high";
    size_t n_outputs = 0;
    if (histograms) {
        for (const auto &s : series) {
            for (const auto &p : s.points) {
                n_outputs = std::max(n_outputs, p.outputs.size());
            }
        }
        for (size_t o = 0; o < n_outputs; o++) {
            for (const char *kind : {"raw", "folded"}) {
                for (int k = 0; k < 16; k++) {
                    out << ",out" << o << '_' << kind << '_' << PauliPair::from_index(k).str();
                }
            }
        }
    }
    out << '\n';
    for (const auto &s : series) {
        for (const auto &p : s.points) {
            out << fmt(p.coordinate) << ',' << s.protocol << ',' << p.trials << ',' << p.errors << ','
                << fmt(p.fidelity) << ',' << fmt(p.ci_low) << ',' << fmt(p.ci_high);
            if (histograms) {
                for (size_t o = 0; o < n_outputs; o++) {
                    for (bool folded : {false, true}) {
                        for (int k = 0; k < 16; k++) {
                            uint64_t c = 0;
                            if (o < p.outputs.size()) {
                                const auto &h = folded ? p.outputs[o].folded : p.outputs[o].raw;
                                c = h.counts[static_cast<size_t>(k)];
                            }
                            out << ',' << c;
                        }
                    }
                }
            }
            out << '\n';
        }
    }
    return out.str();
}

std::string series_json(const std::vector<Series> &series, bool histograms) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto &s : series) {
        nlohmann::json js;
        js["protocol"] = s.protocol;
        js["points"] = nlohmann::json::array();
        for (const auto &p : s.points) {
            nlohmann::json jp;
            jp["coordinate"] = p.coordinate;
            jp["trials"] = p.trials;
            jp["errors"] = p.errors;
            jp["fidelity"] = p.fidelity;
            jp["ci_low"] = p.ci_low;
            jp["ci_high"] = p.ci_high;
            if (histograms) {
                jp["outputs"] = nlohmann::json::array();
                for (const auto &o : p.outputs) {
                    nlohmann::json jo;
                    jo["qubits"] = {o.pair.a, o.pair.b};
                    jo["kind"] = pair_kind_name(o.pair.kind);
                    nlohmann::json raw = nlohmann::json::object();
                    nlohmann::json folded = nlohmann::json::object();
                    for (int k = 0; k < 16; k++) {
                        auto name = PauliPair::from_index(k).str();
                        raw[name] = o.raw.counts[static_cast<size_t>(k)];
                        folded[name] = o.folded.counts[static_cast<size_t>(k)];
                    }
                    jo["raw"] = raw;
                    jo["folded"] = folded;
                    jp["outputs"].push_back(jo);
                }
            }
            js["points"].push_back(jp);
        }
        j.push_back(js);
    }
    return j.dump(2);
}

}  // namespace mqnc
