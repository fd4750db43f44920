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

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mqnc/protocols.hpp"
#include "mqnc/report.hpp"
#include "mqnc/tableau.hpp"

namespace py = pybind11;
using namespace mqnc;

namespace {

py::dict histogram_dict(const ErrorHistogram &h) {
    py::dict d;
    for (int k = 0; k < 16; k++) {
        d[py::str(PauliPair::from_index(k).str())] = h.counts[static_cast<size_t>(k)];
    }
    return d;
}

py::dict stats_dict(const CircuitStats &s) {
    py::dict d;
    d["qubits"] = s.qubits;
    d["entangling_ops"] = s.entangling_ops;
    d["single_qubit_gates"] = s.single_qubit_gates;
    d["byproduct_count"] = s.byproduct_count;
    d["two_qubit_gates"] = s.two_qubit_gates;
    d["measurements"] = s.measurements;
    d["depth"] = s.depth;
    d["kq"] = s.kq;
    return d;
}

PairKind parse_kind(const std::string &kind) {
    if (kind == "bell") return PairKind::BellPhiPlus;
    if (kind == "cluster") return PairKind::TwoQubitCluster;
    throw std::invalid_argument("pair kind must be 'bell' or 'cluster'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Pauli-frame and stabilizer simulation of quantum network coding protocols";

    py::enum_<ProtocolId>(m, "Protocol")
        .value("MQNC", ProtocolId::MQNC)
        .value("QNC", ProtocolId::QNC)
        .value("ES", ProtocolId::ES)
        .value("ESP", ProtocolId::ESP);
    py::enum_<InitBias>(m, "InitBias")
        .value("UNIFORM", InitBias::UniformAll15)
        .value("Z_ON_ODD", InitBias::ZOnOdd)
        .value("X_ON_ODD", InitBias::XOnOdd);
    py::enum_<SweepVariable>(m, "SweepVariable")
        .value("F_INPUT", SweepVariable::FInput)
        .value("F_OPERATION", SweepVariable::FOperation)
        .value("F_MEMORY", SweepVariable::FMemory);

    m.def("parse_protocol", [](const std::string &s) { return parse_protocol(s); });

    m.def("stats", [](ProtocolId id) { return stats_dict(compute_stats(build_protocol(id))); },
          "Circuit statistics of a protocol.");
    m.def("depth_reduction",
          [](ProtocolId a, ProtocolId b) {
              return depth_reduction(compute_stats(build_protocol(a)), compute_stats(build_protocol(b)));
          },
          py::arg("a") = ProtocolId::MQNC, py::arg("b") = ProtocolId::QNC);
    m.def("circuit_text",
          [](ProtocolId id, bool asap) {
              Circuit c = build_protocol(id);
              return to_text(asap ? reschedule_asap(c) : c);
          },
          py::arg("protocol"), py::arg("asap") = false);
    m.def("verify",
          [](ProtocolId id, uint64_t seed) {
              auto r = verify_protocol(build_protocol(id), seed);
              py::dict d;
              d["protocol"] = r.protocol;
              d["passed"] = r.passed();
              d["exhaustive"] = r.exhaustive;
              d["branches"] = r.branches;
              d["failed_branches"] = r.failed_branches;
              d["checks"] = r.checks;
              d["text"] = r.text();
              return d;
          },
          py::arg("protocol"), py::arg("seed") = 1);
    m.def("verify_text", [](const std::string &text) { return verify_protocol(parse_circuit(text)).passed(); },
          "Verify a circuit given in text form.");

    m.def("fold",
          [](const std::string &pair, const std::string &kind) {
              return fold(PauliPair::parse(pair), parse_kind(kind)).str();
          },
          py::arg("pair"), py::arg("kind"));
    m.def("wilson_interval", &wilson_interval, py::arg("successes"), py::arg("trials"),
          py::arg("z") = 1.959963984540054);

    m.def("inject",
          [](ProtocolId id, const std::vector<std::tuple<int, int, std::string>> &injections) {
              std::vector<Injection> inj;
              for (const auto &[step, q, p] : injections) {
                  if (p.size() != 1) {
                      throw std::invalid_argument("injection Pauli must be one character");
                  }
                  inj.push_back({step, q, parse_pauli(p[0])});
              }
              auto out = FrameSimulator(build_protocol(id)).run_injected(inj);
              return std::make_tuple(out.raw[0].str(), out.raw[1].str(), out.any_error);
          },
          "Noise-free run with (step, qubit, pauli) insertions; returns raw residuals and the error flag.");

    py::class_<NoiseModel>(m, "NoiseModel")
        .def(py::init<>())
        .def_readwrite("p_init", &NoiseModel::p_init)
        .def_readwrite("init_bias", &NoiseModel::init_bias)
        .def_readwrite("p_gate1", &NoiseModel::p_gate1)
        .def_readwrite("p_gate2", &NoiseModel::p_gate2)
        .def_readwrite("p_meas", &NoiseModel::p_meas)
        .def_readwrite("p_mem", &NoiseModel::p_mem)
        .def_readwrite("memory_ideal", &NoiseModel::memory_ideal)
        .def_readwrite("charge_byproducts_always", &NoiseModel::charge_byproducts_always)
        .def_readwrite("memory_on_active", &NoiseModel::memory_on_active)
        .def("validate", &NoiseModel::validate)
        .def("to_config", &NoiseModel::to_config)
        .def_static("parse_config", &NoiseModel::parse_config)
        .def_static("total", [](double f_input, double f_operation) {
            NoiseModel n;
            n.p_init = 1 - f_input;
            n.p_gate1 = n.p_gate2 = n.p_meas = n.p_mem = 1 - f_operation;
            return n;
        }, py::arg("f_input"), py::arg("f_operation"), "Total error model with p = 1 - F for every knob.");

    py::class_<DataPoint>(m, "DataPoint")
        .def_readonly("coordinate", &DataPoint::coordinate)
        .def_readonly("protocol", &DataPoint::protocol)
        .def_readonly("trials", &DataPoint::trials)
        .def_readonly("errors", &DataPoint::errors)
        .def_readonly("fidelity", &DataPoint::fidelity)
        .def_readonly("ci_low", &DataPoint::ci_low)
        .def_readonly("ci_high", &DataPoint::ci_high)
        .def("raw", [](const DataPoint &p, size_t o) { return histogram_dict(p.outputs.at(o).raw); },
             py::arg("output") = 0)
        .def("folded", [](const DataPoint &p, size_t o) { return histogram_dict(p.outputs.at(o).folded); },
             py::arg("output") = 0)
        .def("__repr__", [](const DataPoint &p) {
            return "<DataPoint " + p.protocol + " x=" + std::to_string(p.coordinate) +
                   " F=" + std::to_string(p.fidelity) + " trials=" + std::to_string(p.trials) + ">";
        });

    py::class_<Series>(m, "Series")
        .def_readonly("protocol", &Series::protocol)
        .def_readonly("points", &Series::points)
        .def("crossing", [](const Series &s, double level) { return crossing(s, level); },
             py::arg("level") = 0.5);

    m.def("run_datapoint",
          [](ProtocolId id, const NoiseModel &model, uint64_t max_errors, uint64_t max_trials, uint64_t seed,
             int workers) {
              py::gil_scoped_release release;
              return run_datapoint(build_protocol(id), model, {max_errors, max_trials}, seed, 0, workers);
          },
          py::arg("protocol"), py::arg("model"), py::arg("max_errors") = 20000, py::arg("max_trials") = 1000000,
          py::arg("seed") = 1, py::arg("workers") = 0);

    py::class_<SweepSpec>(m, "SweepSpec")
        .def(py::init<>())
        .def_readwrite("protocols", &SweepSpec::protocols)
        .def_readwrite("variable", &SweepSpec::variable)
        .def_readwrite("start", &SweepSpec::start)
        .def_readwrite("stop", &SweepSpec::stop)
        .def_readwrite("step", &SweepSpec::step)
        .def_readwrite("f_input", &SweepSpec::f_input)
        .def_readwrite("f_operation", &SweepSpec::f_operation)
        .def_readwrite("f_memory", &SweepSpec::f_memory)
        .def_readwrite("bias", &SweepSpec::bias)
        .def_readwrite("memory_ideal", &SweepSpec::memory_ideal)
        .def_readwrite("charge_byproducts_always", &SweepSpec::charge_byproducts_always)
        .def_readwrite("memory_on_active", &SweepSpec::memory_on_active)
        .def_readwrite("seed", &SweepSpec::seed)
        .def_property(
            "max_errors", [](const SweepSpec &s) { return s.rule.max_errors; },
            [](SweepSpec &s, uint64_t v) { s.rule.max_errors = v; })
        .def_property(
            "max_trials", [](const SweepSpec &s) { return s.rule.max_trials; },
            [](SweepSpec &s, uint64_t v) { s.rule.max_trials = v; })
        .def("validate", &SweepSpec::validate)
        .def("coordinates", &SweepSpec::coordinates)
        .def("model_at", &SweepSpec::model_at);

    m.def("run_sweep",
          [](const SweepSpec &spec, int workers) {
              py::gil_scoped_release release;
              return run_sweep(spec, workers);
          },
          py::arg("spec"), py::arg("workers") = 0);

    m.def("preset_names", [] {
        std::vector<std::string> out;
        for (const auto &p : presets()) {
            out.push_back(p.name);
        }
        return out;
    });
    m.def("preset_spec", [](const std::string &name) { return find_preset(name).spec; });

    py::class_<RunReport>(m, "RunReport")
        .def_readonly("preset", &RunReport::preset)
        .def_readonly("seed", &RunReport::seed)
        .def_readonly("wall_seconds", &RunReport::wall_seconds)
        .def_readonly("files", &RunReport::files)
        .def_readonly("summary", &RunReport::summary)
        .def_readonly("series", &RunReport::series)
        .def("text", &RunReport::text);

    m.def("run_preset",
          [](const std::string &name, const std::string &out_dir, std::optional<uint64_t> seed,
             std::optional<uint64_t> max_trials, std::optional<uint64_t> max_errors, const std::string &format,
             bool svg, int workers) {
              RunOptions o;
              o.out_dir = out_dir;
              o.seed = seed;
              o.max_trials = max_trials;
              o.max_errors = max_errors;
              if (format != "csv" && format != "json") {
                  throw std::invalid_argument("format must be 'csv' or 'json'");
              }
              o.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
              o.svg = svg;
              o.workers = workers;
              const ExperimentPreset &preset = find_preset(name);
              py::gil_scoped_release release;
              return run_experiment(preset, o);
          },
          py::arg("name"), py::arg("out_dir") = ".", py::arg("seed") = py::none(), py::arg("max_trials") = py::none(),
          py::arg("max_errors") = py::none(), py::arg("format") = "csv", py::arg("svg") = false,
          py::arg("workers") = 0);
}
