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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "mqnc/report.hpp"
#include "mqnc/svg.hpp"

using namespace mqnc;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string &name) {
    fs::path p = fs::temp_directory_path() / ("mqnc_test_" + name);
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST(Presets, UniqueAndValid) {
    std::set<std::string> names;
    for (const auto &p : presets()) {
        EXPECT_TRUE(names.insert(p.name).second) << p.name;
        EXPECT_NO_THROW(p.spec.validate()) << p.name;
        EXPECT_FALSE(p.expected.empty());
    }
    for (const char *n : {"fig7", "fig8", "fig9", "fig10", "fig11", "fig13", "fig14", "appendixB"}) {
        EXPECT_TRUE(names.count(n)) << n;
    }
    EXPECT_THROW(find_preset("fig12"), std::invalid_argument);
}

TEST(Presets, Grids) {
    EXPECT_EQ(find_preset("fig10").spec.coordinates().size(), 41u);
    EXPECT_EQ(find_preset("fig10").spec.protocols.size(), 4u);
    EXPECT_EQ(find_preset("fig14").spec.coordinates().size(), 41u);
    EXPECT_EQ(find_preset("fig9").spec.coordinates().size(), 51u);
    EXPECT_EQ(find_preset("fig7").spec.bias, InitBias::ZOnOdd);
    EXPECT_EQ(find_preset("fig8").spec.bias, InitBias::XOnOdd);
    EXPECT_TRUE(find_preset("fig13").spec.memory_ideal);
    EXPECT_TRUE(find_preset("fig11").histograms);
    EXPECT_EQ(find_preset("appendixB").spec.coordinates().size(), 1u);
}

TEST(ExperimentConfig, Sweep) {
    auto p = parse_experiment_config(
        "name = custom\n"
        "protocols = MQNC, es\n"
        "variable = F_operation\n"
        "start = 0.99\nstop = 1.0\nstep = 0.005\n"
        "f_input = 0.98\n"
        "seed = 17\nmax_errors = 500\nmax_trials = 9000\n"
        "memory_ideal = true\n"
        "histograms = true\n");
    EXPECT_EQ(p.name, "custom");
    ASSERT_EQ(p.spec.protocols.size(), 2u);
    EXPECT_EQ(p.spec.protocols[1], ProtocolId::ES);
    EXPECT_EQ(p.spec.variable, SweepVariable::FOperation);
    EXPECT_EQ(p.spec.coordinates().size(), 3u);
    EXPECT_EQ(p.spec.seed, 17u);
    EXPECT_EQ(p.spec.rule.max_errors, 500u);
    EXPECT_TRUE(p.spec.memory_ideal);
    EXPECT_TRUE(p.histograms);
    EXPECT_FALSE(p.fixed_model.has_value());
}

TEST(ExperimentConfig, FixedModel) {
    auto p = parse_experiment_config("p_init = 0.02\np_gate2 = 0.01\ninit_bias = z_on_odd\n");
    ASSERT_TRUE(p.fixed_model.has_value());
    EXPECT_DOUBLE_EQ(p.fixed_model->p_gate2, 0.01);
    EXPECT_EQ(p.fixed_model->init_bias, InitBias::ZOnOdd);
}

TEST(ExperimentConfig, Errors) {
    EXPECT_THROW(parse_experiment_config("p_init = 0.1\nvariable = F_input\n"), std::invalid_argument);
    EXPECT_THROW(parse_experiment_config("colour = blue\n"), std::invalid_argument);
    EXPECT_THROW(parse_experiment_config("start = abc\n"), std::invalid_argument);
    EXPECT_THROW(parse_experiment_config("start = 0.9\nstop = 0.8\n"), std::invalid_argument);
    EXPECT_THROW(parse_experiment_config("protocols = MQNC, BFLY\n"), std::invalid_argument);
    EXPECT_THROW(load_experiment_config("/nonexistent.cfg"), std::runtime_error);
}

TEST(Report, WritesEveryReferencedFile) {
    auto dir = scratch_dir("report");
    RunOptions o;
    o.out_dir = dir.string();
    o.max_trials = 200;
    o.svg = true;
    o.workers = 1;
    auto r = run_experiment(find_preset("fig10"), o);
    EXPECT_EQ(r.preset, "fig10");
    EXPECT_EQ(r.series.size(), 4u);
    EXPECT_EQ(r.series[0].points.size(), 41u);
    EXPECT_EQ(r.series[0].points[0].trials, 200u);
    // Four series files, the plot and the summary.
    EXPECT_EQ(r.files.size(), 6u);
    for (const auto &f : r.files) {
        EXPECT_TRUE(fs::exists(f)) << f;
    }
    std::string text = r.text();
    EXPECT_NE(text.find("MQNC:"), std::string::npos);
    EXPECT_NE(text.find("infidelity at F_operation 99.95%"), std::string::npos);
    std::ifstream csv(dir / "fig10_MQNC.csv");
    std::string header;
    std::getline(csv, header);
    EXPECT_EQ(header, "coordinate,protocol,trials,errors,fidelity,ci_low,ci_high");
    fs::remove_all(dir);
}

TEST(Report, HistogramPresetsAndJson) {
    auto dir = scratch_dir("hist");
    RunOptions o;
    o.out_dir = dir.string();
    o.max_trials = 500;
    o.svg = true;
    o.format = OutputFormat::Json;
    auto r = run_experiment(find_preset("appendixB"), o);
    for (const auto &f : r.files) {
        EXPECT_TRUE(fs::exists(f)) << f;
    }
    EXPECT_TRUE(fs::exists(dir / "appendixB_MQNC.json"));
    EXPECT_TRUE(fs::exists(dir / "appendixB_MQNC_bars.svg"));
    bool classes = false;
    for (const auto &l : r.summary) {
        classes = classes || l.find("top raw classes") != std::string::npos;
    }
    EXPECT_TRUE(classes);
    fs::remove_all(dir);
}

TEST(Report, FixedModelRun) {
    auto dir = scratch_dir("fixed");
    auto preset = parse_experiment_config("name = fixed\nprotocols = ESP\np_init = 0.02\nmax_trials = 1000\n");
    RunOptions o;
    o.out_dir = dir.string();
    auto r = run_experiment(preset, o);
    ASSERT_EQ(r.series.size(), 1u);
    EXPECT_EQ(r.series[0].points.size(), 1u);
    EXPECT_EQ(r.series[0].points[0].trials, 1000u);
    EXPECT_NE(r.summary[0].find("ESP: fidelity"), std::string::npos);
    fs::remove_all(dir);
}

TEST(Report, OptionsOverridePreset) {
    RunOptions o;
    o.seed = 99;
    o.max_errors = 10;
    o.charge_byproducts_always = true;
    auto p = apply_options(find_preset("fig9"), o);
    EXPECT_EQ(p.spec.seed, 99u);
    EXPECT_EQ(p.spec.rule.max_errors, 10u);
    EXPECT_EQ(p.spec.rule.max_trials, 1000000u);
    EXPECT_TRUE(p.spec.charge_byproducts_always);
}

TEST(Report, UnwritableDirectoryThrows) {
    RunOptions o;
    o.out_dir = "/proc/mqnc_cannot_exist";
    o.max_trials = 10;
    EXPECT_THROW(run_experiment(find_preset("appendixB"), o), std::runtime_error);
}

TEST(Svg, LinePlot) {
    std::string s = svg_line_plot("t<1>", "x", "y", {{"A", {0, 1, 2}, {0, 0.5, 1}}, {"B", {0, 2}, {1, 0}}});
    EXPECT_EQ(s.rfind("<svg", 0), 0u);
    EXPECT_NE(s.find("</svg>"), std::string::npos);
    EXPECT_NE(s.find("t&lt;1&gt;"), std::string::npos);
    size_t lines = 0;
    for (size_t i = s.find("<polyline"); i != std::string::npos; i = s.find("<polyline", i + 1)) {
        lines++;
    }
    EXPECT_EQ(lines, 2u);
    EXPECT_NE(svg_line_plot("empty", "x", "y", {}).find("</svg>"), std::string::npos);
}

TEST(Svg, StackedBars) {
    std::string s = svg_stacked_bars("bars", {"a", "b"}, {"IX", "XI"}, {{1, 2}, {3, 0}});
    EXPECT_NE(s.find(">IX<"), std::string::npos);
    EXPECT_NE(s.find(">b<"), std::string::npos);
}
