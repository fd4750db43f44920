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

#include "mqnc/presets.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mqnc {

namespace {

ExperimentPreset input_sweep(std::string name, std::string title, InitBias bias, std::string expected) {
    ExperimentPreset p;
    p.name = std::move(name);
    p.title = std::move(title);
    p.spec.variable = SweepVariable::FInput;
    p.spec.start = 0.50;
    p.spec.stop = 1.00;
    p.spec.step = 0.01;
    p.spec.bias = bias;
    p.expected = std::move(expected);
    return p;
}

ExperimentPreset operation_sweep(std::string name, std::string title, std::string expected) {
    ExperimentPreset p;
    p.name = std::move(name);
    p.title = std::move(title);
    p.spec.variable = SweepVariable::FOperation;
    p.spec.start = 0.98;
    p.spec.stop = 1.00;
    p.spec.step = 0.0005;
    p.spec.f_input = 0.98;
    p.expected = std::move(expected);
    return p;
}

std::vector<ExperimentPreset> build_presets() {
    std::vector<ExperimentPreset> out;
    out.push_back(input_sweep("fig7", "Z errors on odd-labelled link qubits, ideal operations", InitBias::ZOnOdd,
                              "MQNC lowest; QNC, ES and ESP reach 25% at F_input = 50%"));
    out.push_back(input_sweep("fig8", "X errors on odd-labelled link qubits, ideal operations", InitBias::XOnOdd,
                              "6.25% for MQNC and ESP, 25% for QNC and ES at F_input = 50%"));
    out.push_back(input_sweep("fig9", "uniform input errors, ideal operations", InitBias::UniformAll15,
                              "50% crossings near F_input 87% (ESP), 89% (ES, MQNC), 91% (QNC)"));

    out.push_back(operation_sweep("fig10", "total error model, F_input = 98%",
                                  "MQNC crosses 50% near F_operation 98.9%; infidelity at 99.95%: "
                                  "MQNC 13.9%, ESP 10.7%, ES 14.4%, QNC 20.2%"));

    auto fig11 = operation_sweep("fig11", "MQNC output (0,5) error distribution, F_input = 98%",
                                 "P(ZZ) near 0.03% and P(XX) near 0.36% as F_operation -> 100%");
    fig11.spec.protocols = {ProtocolId::MQNC};
    fig11.histograms = true;
    out.push_back(fig11);

    auto dist = operation_sweep("dist9898", "error distribution of all outputs at F_input = F_operation = 98%",
                                "MQNC dominated by IX and XI; symmetric over the two outputs");
    dist.spec.start = dist.spec.stop = 0.98;
    dist.histograms = true;
    out.push_back(dist);

    auto fig13 = operation_sweep("fig13", "total error model with ideal memory, F_input = 98%",
                                 "ES and ESP above MQNC and QNC; all converge as F_operation -> 100%");
    fig13.spec.memory_ideal = true;
    out.push_back(fig13);

    ExperimentPreset fig14;
    fig14.name = "fig14";
    fig14.title = "memory sweep, F_operation = 99%, F_input = 98%";
    fig14.spec.variable = SweepVariable::FMemory;
    fig14.spec.start = 0.98;
    fig14.spec.stop = 1.00;
    fig14.spec.step = 0.0005;
    fig14.spec.f_input = 0.98;
    fig14.spec.f_operation = 0.99;
    fig14.expected = "MQNC above ES while F_memory <= 99.8%";
    out.push_back(fig14);

    auto appendix = input_sweep("appendixB", "raw and folded output errors at F_input = 50%, ideal operations",
                                InitBias::UniformAll15, "folded II mass = raw II mass + raw stabilizer mass");
    appendix.spec.start = appendix.spec.stop = 0.50;
    appendix.histograms = true;
    out.push_back(appendix);

    for (const auto &p : out) {
        p.spec.validate();
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double number(std::string_view key, std::string_view v) {
    try {
        size_t used = 0;
        double d = std::stod(std::string(v), &used);
        if (used != v.size()) {
            throw std::invalid_argument("");
        }
        return d;
    } catch (const std::exception &) {
        throw std::invalid_argument("bad number for " + std::string(key) + ": '" + std::string(v) + "'");
    }
}

}  // namespace

const std::vector<ExperimentPreset> &presets() {
    static const std::vector<ExperimentPreset> all = build_presets();
    return all;
}

const ExperimentPreset &find_preset(const std::string &name) {
    for (const auto &p : presets()) {
        if (p.name == name) {
            return p;
        }
    }
    std::string known;
    for (const auto &p : presets()) {
        known += (known.empty() ? "" : ", ") + p.name;
    }
    throw std::invalid_argument("unknown preset '" + name + "' (known: " + known + ")");
}

ExperimentPreset parse_experiment_config(std::string_view text) {
    ExperimentPreset p;
    p.name = "config";
    p.title = "custom sweep";
    std::string noise_lines;
    bool fixed = false;
    bool swept = false;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        std::string_view l = line;
        if (auto hash = l.find('#'); hash != std::string_view::npos) {
            l = l.substr(0, hash);
        }
        l = trim(l);
        if (l.empty()) {
            continue;
        }
        auto eq = l.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("config: expected key = value, got '" + std::string(l) + "'");
        }
        auto key = trim(l.substr(0, eq));
        auto value = trim(l.substr(eq + 1));
        auto &s = p.spec;
        if (key == "variable" || key == "start" || key == "stop" || key == "step" || key.starts_with("f_")) {
            swept = true;
        }
        if (key == "name") {
            p.name = value;
        } else if (key == "protocols") {
            s.protocols.clear();
            std::string v(value);
            for (char &c : v) {
                if (c == ',') c = ' ';
            }
            std::istringstream names(v);
            std::string n;
            while (names >> n) {
                s.protocols.push_back(parse_protocol(n));
            }
        } else if (key == "variable") {
            s.variable = parse_sweep_variable(value);
        } else if (key == "start") {
            s.start = number(key, value);
        } else if (key == "stop") {
            s.stop = number(key, value);
        } else if (key == "step") {
            s.step = number(key, value);
        } else if (key == "f_input") {
            s.f_input = number(key, value);
        } else if (key == "f_operation") {
            s.f_operation = number(key, value);
        } else if (key == "f_memory") {
            s.f_memory = number(key, value);
        } else if (key == "seed") {
            s.seed = static_cast<uint64_t>(number(key, value));
        } else if (key == "max_errors") {
            s.rule.max_errors = static_cast<uint64_t>(number(key, value));
        } else if (key == "max_trials") {
            s.rule.max_trials = static_cast<uint64_t>(number(key, value));
        } else if (key == "histograms") {
            p.histograms = value == "true" || value == "1";
        } else if (key == "init_bias" || key == "memory_ideal" || key == "charge_byproducts_always" ||
                   key == "memory_on_active") {
            noise_lines += std::string(key) + " = " + std::string(value) + "\n";
        } else if (key.starts_with("p_")) {
            noise_lines += std::string(key) + " = " + std::string(value) + "\n";
            fixed = true;
        } else {
            throw std::invalid_argument("config: unknown key '" + std::string(key) + "'");
        }
    }
    NoiseModel flags = NoiseModel::parse_config(noise_lines);
    if (fixed && swept) {
        throw std::invalid_argument("config: give either error probabilities (p_*) or a sweep, not both");
    }
    if (fixed) {
        p.fixed_model = flags;
        p.spec.start = p.spec.stop = 0;
    }
    p.spec.bias = flags.init_bias;
    p.spec.memory_ideal = flags.memory_ideal;
    p.spec.charge_byproducts_always = flags.charge_byproducts_always;
    p.spec.memory_on_active = flags.memory_on_active;
    p.spec.validate();
    return p;
}

ExperimentPreset load_experiment_config(const std::string &path) {
    std::ifstream f(path);
    if (!f) {
        throw std::runtime_error("cannot read config file " + path);
    }
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_experiment_config(buf.str());
}

}  // namespace mqnc
