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

#include "mqnc/noise.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mqnc {

std::string init_bias_name(InitBias bias) {
    switch (bias) {
        case InitBias::UniformAll15:
            return "uniform";
        case InitBias::ZOnOdd:
            return "z_on_odd";
        case InitBias::XOnOdd:
            return "x_on_odd";
    }
    return "?";
}

InitBias parse_init_bias(std::string_view name) {
    std::string s;
    for (char c : name) {
        s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    if (s == "uniform" || s == "uniformall15" || s == "uniform_all15") return InitBias::UniformAll15;
    if (s == "z_on_odd" || s == "zonodd" || s == "z") return InitBias::ZOnOdd;
    if (s == "x_on_odd" || s == "xonodd" || s == "x") return InitBias::XOnOdd;
    throw std::invalid_argument("unknown init_bias '" + std::string(name) + "' (uniform, z_on_odd, x_on_odd)");
}

void NoiseModel::validate() const {
    auto check = [](const char *name, double p) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument(std::string(name) + " must lie in [0, 1], got " + std::to_string(p));
        }
    };
    check("p_init", p_init);
    check("p_gate1", p_gate1);
    check("p_gate2", p_gate2);
    check("p_meas", p_meas);
    check("p_mem", p_mem);
}

bool NoiseModel::is_noiseless() const {
    return p_init == 0 && p_gate1 == 0 && p_gate2 == 0 && p_meas == 0 && (memory_ideal || p_mem == 0);
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_probability(std::string_view key, std::string_view v) {
    double out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        throw std::invalid_argument("bad number for " + std::string(key) + ": '" + std::string(v) + "'");
    }
    return out;
}

bool parse_bool(std::string_view key, std::string_view v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw std::invalid_argument("bad boolean for " + std::string(key) + ": '" + std::string(v) + "'");
}

}  // namespace

NoiseModel NoiseModel::parse_config(std::string_view text) {
    NoiseModel m;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
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
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
        }
        auto key = trim(l.substr(0, eq));
        auto value = trim(l.substr(eq + 1));
        if (key == "p_init") m.p_init = parse_probability(key, value);
        else if (key == "init_bias") m.init_bias = parse_init_bias(value);
        else if (key == "p_gate1") m.p_gate1 = parse_probability(key, value);
        else if (key == "p_gate2") m.p_gate2 = parse_probability(key, value);
        else if (key == "p_meas") m.p_meas = parse_probability(key, value);
        else if (key == "p_mem") m.p_mem = parse_probability(key, value);
        else if (key == "memory_ideal") m.memory_ideal = parse_bool(key, value);
        else if (key == "charge_byproducts_always") m.charge_byproducts_always = parse_bool(key, value);
        else if (key == "memory_on_active") m.memory_on_active = parse_bool(key, value);
        else
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": unknown key '" +
                                        std::string(key) + "'");
    }
    m.validate();
    return m;
}

NoiseModel NoiseModel::load_config(const std::string &path) {
    std::ifstream f(path);
    if (!f) {
        throw std::runtime_error("cannot read config file " + path);
    }
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_config(buf.str());
}

std::string NoiseModel::to_config() const {
    std::ostringstream out;
    out.precision(17);
    out << "p_init = " << p_init << '\n';
    out << "init_bias = " << init_bias_name(init_bias) << '\n';
    out << "p_gate1 = " << p_gate1 << '\n';
    out << "p_gate2 = " << p_gate2 << '\n';
    out << "p_meas = " << p_meas << '\n';
    out << "p_mem = " << p_mem << '\n';
    out << "memory_ideal = " << (memory_ideal ? "true" : "false") << '\n';
    out << "charge_byproducts_always = " << (charge_byproducts_always ? "true" : "false") << '\n';
    out << "memory_on_active = " << (memory_on_active ? "true" : "false") << '\n';
    return out.str();
}

PauliPair sample_initial(const ResourcePair &pair, const NoiseModel &model, TrialRng &rng) {
    const bool first_odd = (std::min(pair.a, pair.b) & 1) != 0;
    if (model.init_bias != InitBias::UniformAll15 && ((pair.a ^ pair.b) & 1) == 0) {
        throw std::invalid_argument("biased input errors need exactly one odd qubit in pair (" +
                                    std::to_string(pair.a) + "," + std::to_string(pair.b) + ")");
    }
    switch (model.init_bias) {
        case InitBias::UniformAll15:
            return PauliPair::from_index(sample_class(model.p_init, 15, rng));
        case InitBias::ZOnOdd:
        case InitBias::XOnOdd: {
            if (sample_class(model.p_init, 1, rng) == 0) {
                return {};
            }
            Pauli e = model.init_bias == InitBias::ZOnOdd ? Pauli::Z : Pauli::X;
            return first_odd ? PauliPair{e, Pauli::I} : PauliPair{Pauli::I, e};
        }
    }
    return {};
}

}  // namespace mqnc
