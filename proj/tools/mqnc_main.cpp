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

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mqnc/protocols.hpp"
#include "mqnc/report.hpp"
#include "mqnc/tableau.hpp"

using namespace mqnc;

namespace {

constexpr ProtocolId kAll[] = {ProtocolId::MQNC, ProtocolId::QNC, ProtocolId::ES, ProtocolId::ESP};

int cmd_stats() {
    std::cout << std::left << std::setw(6) << "" << std::right << std::setw(8) << "qubits" << std::setw(12)
              << "entangling" << std::setw(16) << "1q (byproduct)" << std::setw(6) << "2q" << std::setw(14)
              << "measurements" << std::setw(7) << "depth" << std::setw(6) << "KQ" << '\n';
    for (auto id : kAll) {
        auto s = compute_stats(build_protocol(id));
        std::ostringstream oneq;
        oneq << s.single_qubit_gates << " (" << s.byproduct_count << ")";
        std::cout << std::left << std::setw(6) << protocol_name(id) << std::right << std::setw(8) << s.qubits
                  << std::setw(12) << s.entangling_ops << std::setw(16) << oneq.str() << std::setw(6)
                  << s.two_qubit_gates << std::setw(14) << s.measurements << std::setw(7) << s.depth << std::setw(3)
                  << "KQ" << std::setw(4) << s.kq << '\n';
    }
    auto mqnc = compute_stats(build_protocol(ProtocolId::MQNC));
    auto qnc = compute_stats(build_protocol(ProtocolId::QNC));
    std::cout << "MQNC vs QNC depth reduction " << std::fixed << std::setprecision(1)
              << 100 * depth_reduction(mqnc, qnc) << "% (" << mqnc.depth << " vs " << qnc.depth << " steps)\n";
    return 0;
}

int cmd_verify(bool json, const std::string &circuit_file) {
    std::vector<VerifyReport> reports;
    if (!circuit_file.empty()) {
        std::ifstream in(circuit_file);
        if (!in) {
            throw std::runtime_error("cannot read " + circuit_file);
        }
        std::stringstream buf;
        buf << in.rdbuf();
        reports.push_back(verify_protocol(parse_circuit(buf.str())));
    } else {
        for (auto id : kAll) {
            reports.push_back(verify_protocol(build_protocol(id)));
        }
    }
    bool ok = true;
    if (json) {
        std::cout << '[';
        for (size_t i = 0; i < reports.size(); i++) {
            std::cout << (i ? "," : "") << reports[i].json();
        }
        std::cout << "]\n";
    }
    for (const auto &r : reports) {
        if (!json) {
            std::cout << r.text();
        }
        ok = ok && r.passed();
    }
    return ok ? 0 : 1;
}

int cmd_circuit(const std::string &name, bool asap) {
    Circuit c = build_protocol(parse_protocol(name));
    std::cout << to_text(asap ? reschedule_asap(c) : c);
    return 0;
}

int cmd_list() {
    for (const auto &p : presets()) {
        std::cout << std::left << std::setw(10) << p.name << p.title << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Monte Carlo and stabilizer simulation of quantum network coding protocols"};
    app.require_subcommand(1);

    auto *stats = app.add_subcommand("stats", "print the circuit statistics table");

    auto *verify = app.add_subcommand("verify", "check every measurement branch with the stabilizer tableau");
    bool verify_json = false;
    std::string verify_file;
    verify->add_flag("--json", verify_json, "emit JSON");
    verify->add_option("--circuit", verify_file, "verify a circuit text file instead of the built-in protocols");

    auto *circuit = app.add_subcommand("circuit", "print a protocol circuit in text form");
    std::string circuit_name;
    bool circuit_asap = false;
    circuit->add_option("protocol", circuit_name, "MQNC, QNC, ES or ESP")->required();
    circuit->add_flag("--asap", circuit_asap, "reschedule as soon as possible");

    auto *list = app.add_subcommand("list", "list experiment presets");

    auto *run = app.add_subcommand("run", "run an experiment preset or config file");
    std::string preset_name, config_file, format = "csv";
    RunOptions options;
    uint64_t seed = 0, max_trials = 0, max_errors = 0;
    bool quiet = false;
    if (const char *env = std::getenv("MQNC_OUT_DIR"); env && *env) {
        options.out_dir = env;
    }
    run->add_option("preset", preset_name, "preset name (see `list`)");
    run->add_option("--config", config_file, "experiment config file");
    auto *seed_opt = run->add_option("--seed", seed, "master seed");
    auto *trials_opt = run->add_option("--max-trials", max_trials, "trial cap per data point");
    auto *errors_opt = run->add_option("--max-errors", max_errors, "error count that stops a data point");
    run->add_option("--out", options.out_dir, "output directory (default $MQNC_OUT_DIR or .)");
    run->add_option("--format", format, "series file format")->check(CLI::IsMember({"csv", "json"}));
    run->add_flag("--svg", options.svg, "also write SVG plots");
    run->add_option("--threads", options.workers, "worker threads (0 = hardware concurrency)")
        ->check(CLI::NonNegativeNumber);
    run->add_flag("--charge-byproducts-always", options.charge_byproducts_always,
                  "apply gate noise to every byproduct, fired or not");
    run->add_flag("--memory-on-active", options.memory_on_active,
                  "apply memory noise to all live qubits each step, not only idle ones");
    run->add_flag("-q,--quiet", quiet, "no progress output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*stats) {
            return cmd_stats();
        }
        if (*verify) {
            return cmd_verify(verify_json, verify_file);
        }
        if (*circuit) {
            return cmd_circuit(circuit_name, circuit_asap);
        }
        if (*list) {
            return cmd_list();
        }
        if (preset_name.empty() == config_file.empty()) {
            std::cerr << "run: give exactly one of a preset name or --config\n";
            return 2;
        }
        ExperimentPreset preset = config_file.empty() ? find_preset(preset_name) : load_experiment_config(config_file);
        if (*seed_opt) {
            options.seed = seed;
        }
        if (*trials_opt) {
            options.max_trials = max_trials;
        }
        if (*errors_opt) {
            options.max_errors = max_errors;
        }
        options.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
        if (!quiet) {
            options.progress = [](const std::string &protocol, size_t i, size_t n, const DataPoint &p) {
                std::cerr << protocol << " " << (i + 1) << "/" << n << " x=" << p.coordinate << " F=" << p.fidelity
                          << " (" << p.trials << " trials)\n";
            };
        }
        RunReport report = run_experiment(preset, options);
        std::cout << report.text();
        return 0;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
