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

#include "mqnc/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mqnc/protocols.hpp"
#include "mqnc/svg.hpp"

namespace mqnc {

namespace {

std::string pct(double v, int digits = 2) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(digits);
    s << 100 * v << '%';
    return s.str();
}

const DataPoint *point_at(const Series &s, double coordinate) {
    for (const auto &p : s.points) {
        if (std::abs(p.coordinate - coordinate) < 1e-9) {
            return &p;
        }
    }
    return nullptr;
}

const Series *find_series(const std::vector<Series> &series, const std::string &protocol) {
    for (const auto &s : series) {
        if (s.protocol == protocol) {
            return &s;
        }
    }
    return nullptr;
}

void write_file(const std::filesystem::path &path, const std::string &content) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << content;
    out.close();
    if (!out) {
        throw std::runtime_error("write failed for " + path.string());
    }
}

std::string variable_label(const ExperimentPreset &preset) {
    switch (preset.spec.variable) {
        case SweepVariable::FInput:
            return "F_input (%)";
        case SweepVariable::FOperation:
            return "F_operation (%)";
        case SweepVariable::FMemory:
            return "F_memory (%)";
    }
    return "coordinate";
}

}  // namespace

ExperimentPreset apply_options(const ExperimentPreset &preset, const RunOptions &options) {
    ExperimentPreset p = preset;
    if (options.seed) {
        p.spec.seed = *options.seed;
    }
    if (options.max_trials) {
        p.spec.rule.max_trials = *options.max_trials;
    }
    if (options.max_errors) {
        p.spec.rule.max_errors = *options.max_errors;
    }
    p.spec.charge_byproducts_always = p.spec.charge_byproducts_always || options.charge_byproducts_always;
    p.spec.memory_on_active = p.spec.memory_on_active || options.memory_on_active;
    if (p.fixed_model) {
        p.fixed_model->charge_byproducts_always = p.spec.charge_byproducts_always;
        p.fixed_model->memory_on_active = p.spec.memory_on_active;
    }
    return p;
}

std::vector<Series> run_experiment_series(const ExperimentPreset &preset, int workers, const ProgressFn &progress) {
    if (!preset.fixed_model) {
        return run_sweep(preset.spec, workers, progress);
    }
    preset.fixed_model->validate();
    preset.spec.rule.validate();
    std::vector<Series> out;
    for (auto id : preset.spec.protocols) {
        FrameSimulator sim(build_protocol(id));
        const uint64_t key = uint64_t{static_cast<uint8_t>(id)} << 32;
        DataPoint dp = run_datapoint(sim, *preset.fixed_model, preset.spec.rule, preset.spec.seed, key, workers);
        Series s{protocol_name(id), {}};
        if (progress) {
            progress(s.protocol, 0, 1, dp);
        }
        s.points.push_back(std::move(dp));
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<std::string> summarize(const ExperimentPreset &preset, const std::vector<Series> &series) {
    std::vector<std::string> lines;
    if (preset.fixed_model) {
        for (const auto &s : series) {
            for (const auto &p : s.points) {
                lines.push_back(s.protocol + ": fidelity " + pct(p.fidelity) + " [" + pct(p.ci_low) + ", " +
                                pct(p.ci_high) + "] over " + std::to_string(p.trials) + " trials");
            }
        }
        return lines;
    }
    const std::string var = sweep_variable_name(preset.spec.variable);
    for (const auto &s : series) {
        if (s.points.empty()) {
            continue;
        }
        const auto &first = s.points.front();
        const auto &last = s.points.back();
        std::string line = s.protocol + ": F = " + pct(first.fidelity) + " at " + var + " " + pct(first.coordinate);
        if (s.points.size() > 1) {
            line += ", " + pct(last.fidelity) + " at " + pct(last.coordinate);
            auto x = crossing(s, 0.5);
            line += x ? "; 50% crossing at " + var + " " + pct(*x, 3) : "; no 50% crossing";
        }
        lines.push_back(line);
    }
    if (preset.spec.variable == SweepVariable::FOperation) {
        std::string line = "infidelity at F_operation 99.95%:";
        bool any = false;
        for (const auto &s : series) {
            if (const auto *p = point_at(s, 0.9995)) {
                line += " " + s.protocol + " " + pct(1 - p->fidelity);
                any = true;
            }
        }
        if (any) {
            lines.push_back(line);
        }
    }
    if (preset.spec.variable == SweepVariable::FMemory) {
        const Series *m = find_series(series, "MQNC");
        const Series *e = find_series(series, "ES");
        if (m && e) {
            std::optional<double> last_above;
            for (const auto &pm : m->points) {
                const auto *pe = point_at(*e, pm.coordinate);
                if (pe && pm.fidelity > pe->fidelity) {
                    last_above = pm.coordinate;
                } else if (pe) {
                    break;
                }
            }
            lines.push_back(last_above ? "MQNC above ES up to F_memory " + pct(*last_above)
                                       : "MQNC not above ES at the first grid point");
        }
    }
    if (preset.histograms) {
        for (const auto &s : series) {
            if (s.points.empty() || s.points.back().outputs.empty()) {
                continue;
            }
            const auto &p = s.points.back();
            for (size_t o = 0; o < p.outputs.size(); o++) {
                const auto &h = p.outputs[o].raw;
                std::vector<int> order;
                for (int k = 1; k < 16; k++) {
                    order.push_back(k);
                }
                std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
                    return h.counts[static_cast<size_t>(a)] > h.counts[static_cast<size_t>(b)];
                });
                std::string line = s.protocol + " output (" + std::to_string(p.outputs[o].pair.a) + "," +
                                   std::to_string(p.outputs[o].pair.b) + ") at " + pct(p.coordinate) +
                                   ", top raw classes:";
                for (size_t i = 0; i < 4; i++) {
                    auto pp = PauliPair::from_index(order[i]);
                    line += " " + pp.str() + " " + pct(h.probability(pp), 3);
                }
                lines.push_back(line);
            }
        }
    }
    if (!preset.expected.empty()) {
        lines.push_back("expected: " + preset.expected);
    }
    return lines;
}

RunReport run_experiment(const ExperimentPreset &input, const RunOptions &options) {
    const ExperimentPreset preset = apply_options(input, options);
    namespace fs = std::filesystem;
    const fs::path dir(options.out_dir.empty() ? "." : options.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw std::runtime_error("cannot create output directory " + dir.string());
    }

    RunReport report;
    report.preset = preset.name;
    report.seed = preset.spec.seed;
    auto t0 = std::chrono::steady_clock::now();
    report.series = run_experiment_series(preset, options.workers, options.progress);
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report.summary = summarize(preset, report.series);

    const std::string ext = options.format == OutputFormat::Csv ? ".csv" : ".json";
    for (const auto &s : report.series) {
        fs::path path = dir / (preset.name + "_" + s.protocol + ext);
        std::vector<Series> one{s};
        write_file(path, options.format == OutputFormat::Csv ? series_csv(one, preset.histograms)
                                                             : series_json(one, preset.histograms));
        report.files.push_back(path.string());
    }

    if (options.svg) {
        std::vector<LineSeries> lines;
        for (const auto &s : report.series) {
            LineSeries ls{s.protocol, {}, {}};
            for (const auto &p : s.points) {
                ls.x.push_back(100 * p.coordinate);
                ls.y.push_back(100 * p.fidelity);
            }
            lines.push_back(std::move(ls));
        }
        fs::path path = dir / (preset.name + ".svg");
        write_file(path, svg_line_plot(preset.title, preset.fixed_model ? "point" : variable_label(preset),
                                       "joint output fidelity (%)", lines));
        report.files.push_back(path.string());

        if (preset.histograms) {
            for (const auto &s : report.series) {
                if (s.points.empty() || s.points.front().outputs.empty()) {
                    continue;
                }
                if (s.points.size() > 1) {
                    auto dist = distribution_series(s.points, 0, false);
                    std::vector<LineSeries> curves;
                    for (int k = 1; k < 16; k++) {
                        LineSeries ls{PauliPair::from_index(k).str(), {}, {}};
                        for (size_t i = 0; i < dist.coordinates.size(); i++) {
                            ls.x.push_back(100 * dist.coordinates[i]);
                            ls.y.push_back(100 * dist.curves[static_cast<size_t>(k)][i]);
                        }
                        curves.push_back(std::move(ls));
                    }
                    fs::path dpath = dir / (preset.name + "_" + s.protocol + "_dist.svg");
                    write_file(dpath, svg_line_plot(s.protocol + " raw error classes, output 0",
                                                    variable_label(preset), "probability (%)", curves));
                    report.files.push_back(dpath.string());
                } else {
                    std::vector<std::string> categories;
                    std::vector<std::vector<double>> values;
                    for (const auto &o : s.points.front().outputs) {
                        for (bool folded : {false, true}) {
                            categories.push_back("(" + std::to_string(o.pair.a) + "," + std::to_string(o.pair.b) +
                                                 ") " + (folded ? "folded" : "raw"));
                            const auto &h = folded ? o.folded : o.raw;
                            std::vector<double> bar;
                            for (int k = 1; k < 16; k++) {
                                bar.push_back(100 * h.probability(PauliPair::from_index(k)));
                            }
                            values.push_back(std::move(bar));
                        }
                    }
                    std::vector<std::string> segments;
                    for (int k = 1; k < 16; k++) {
                        segments.push_back(PauliPair::from_index(k).str());
                    }
                    fs::path bpath = dir / (preset.name + "_" + s.protocol + "_bars.svg");
                    write_file(bpath, svg_stacked_bars(s.protocol + " output error classes (%)", categories,
                                                       segments, values));
                    report.files.push_back(bpath.string());
                }
            }
        }
    }

    fs::path summary_path = dir / (preset.name + "_summary.txt");
    write_file(summary_path, report.text());
    report.files.push_back(summary_path.string());
    return report;
}

std::string RunReport::text() const {
    std::ostringstream out;
    out << "preset: " << preset << '\n';
    out << "seed: " << seed << '\n';
    out.setf(std::ios::fixed);
    out.precision(2);
    out << "wall time: " << wall_seconds << " s\n";
    for (const auto &f : files) {
        out << "file: " << f << '\n';
    }
    for (const auto &l : summary) {
        out << l << '\n';
    }
    return out.str();
}

}  // namespace mqnc
