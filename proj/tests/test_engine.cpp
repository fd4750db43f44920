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

#include <cmath>

#include "mqnc/engine.hpp"
#include "mqnc/protocols.hpp"

using namespace mqnc;

namespace {

constexpr ProtocolId kAll[] = {ProtocolId::MQNC, ProtocolId::QNC, ProtocolId::ES, ProtocolId::ESP};

// Two Bell pairs that only wait for `idle` time steps.
Circuit waiting_pairs(int idle) {
    CircuitBuilder b(ProtocolId::ES, 4);
    b.step().entangle(PairKind::BellPhiPlus, 0, 1).entangle(PairKind::BellPhiPlus, 2, 3).step();
    for (int i = 0; i < idle; i++) {
        b.step();
    }
    b.output(0, 1, PairKind::BellPhiPlus).output(2, 3, PairKind::BellPhiPlus);
    return b.build();
}

NoiseModel total_model(double f_in, double f_op) {
    NoiseModel m;
    m.p_init = 1 - f_in;
    m.p_gate1 = m.p_gate2 = m.p_meas = m.p_mem = 1 - f_op;
    return m;
}

double within_sigma(const DataPoint &p, double expected) {
    double sd = std::sqrt(expected * (1 - expected) / static_cast<double>(p.trials));
    return std::abs(p.fidelity - expected) / sd;
}

}  // namespace

TEST(Engine, ZeroNoiseIsPerfect) {
    for (auto id : kAll) {
        TerminationRule rule{20000, 50000};
        auto p = run_datapoint(build_protocol(id), NoiseModel{}, rule, 3);
        EXPECT_EQ(p.trials, 50000u);
        EXPECT_EQ(p.errors, 0u);
        EXPECT_EQ(p.fidelity, 1.0);
        EXPECT_EQ(p.outputs[0].raw.counts[0], 50000u);
    }
}

TEST(Engine, StopsAtMaxErrors) {
    auto p = run_datapoint(build_protocol(ProtocolId::QNC), total_model(0.7, 0.9), TerminationRule{}, 5);
    EXPECT_EQ(p.errors, 20000u);
    EXPECT_LT(p.trials, 1000000u);
    EXPECT_EQ(p.outputs[0].raw.total(), p.trials);
}

TEST(Engine, StopsAtMaxTrials) {
    auto p = run_datapoint(build_protocol(ProtocolId::ESP), total_model(0.99, 0.999), {20000, 12345}, 5);
    EXPECT_EQ(p.trials, 12345u);
    EXPECT_LT(p.errors, 20000u);
}

TEST(Engine, SameSeedSameResultForAnyWorkerCount) {
    FrameSimulator sim(build_protocol(ProtocolId::MQNC));
    auto model = total_model(0.98, 0.99);
    TerminationRule rule{3000, 60000};
    auto one = run_datapoint(sim, model, rule, 42, 7, 1);
    for (int w : {2, 3}) {
        EXPECT_EQ(run_datapoint(sim, model, rule, 42, 7, w), one) << w << " workers";
    }
    EXPECT_NE(run_datapoint(sim, model, rule, 43, 7, 1), one);
}

TEST(Engine, InjectedStabilizerIsHarmless) {
    Circuit c = build_protocol(ProtocolId::MQNC);
    FrameSimulator sim(c);
    const int end = static_cast<int>(c.depth());
    // X0 Z5 stabilizes the (0,5) cluster output.
    auto out = sim.run_injected({{end, 0, Pauli::X}, {end, 5, Pauli::Z}});
    EXPECT_EQ(out.raw[0], PauliPair::parse("XZ"));
    EXPECT_EQ(out.folded[0], PauliPair{});
    EXPECT_FALSE(out.any_error);
    auto bad = sim.run_injected({{end, 0, Pauli::Z}});
    EXPECT_TRUE(bad.any_error);
    EXPECT_THROW(sim.run_injected({{0, 0, Pauli::X}}), std::out_of_range);
}

TEST(Engine, InputErrorsMatchClosedForm) {
    // A uniform error on a Bell pair is harmless for 3 of its 15 classes.
    NoiseModel m;
    m.p_init = 0.3;
    auto p = run_datapoint(waiting_pairs(0), m, {1000000, 400000}, 8);
    double single = 1 - 0.8 * m.p_init;
    EXPECT_LT(within_sigma(p, single * single), 4.0) << p.fidelity;
}

TEST(Engine, MemoryDecayMatchesClosedForm) {
    // k depolarizing steps leave I with probability a = (1 + 3 l^k) / 4,
    // l = 1 - 4p/3; a Bell pair survives iff both qubits carry the same Pauli.
    NoiseModel m;
    m.p_mem = 0.02;
    for (int k : {1, 4, 12}) {
        auto p = run_datapoint(waiting_pairs(k), m, {1000000, 300000}, 9);
        double a = (1 + 3 * std::pow(1 - 4 * m.p_mem / 3, k)) / 4;
        double pair = a * a + (1 - a) * (1 - a) / 3;
        EXPECT_LT(within_sigma(p, pair * pair), 4.0) << k << " steps: " << p.fidelity;
    }
    NoiseModel ideal = m;
    ideal.memory_ideal = true;
    EXPECT_EQ(run_datapoint(waiting_pairs(5), ideal, {1000, 10000}, 9).errors, 0u);
}

TEST(Engine, FidelityFallsWithNoise) {
    for (auto id : kAll) {
        FrameSimulator sim(build_protocol(id));
        TerminationRule rule{1000000, 100000};
        double prev = 1.1;
        for (double f : {0.999, 0.99, 0.97}) {
            auto p = run_datapoint(sim, total_model(0.99, f), rule, 1);
            EXPECT_LT(p.ci_high, prev) << protocol_name(id) << " at " << f;
            prev = p.fidelity;
        }
    }
}

TEST(Engine, ConfidenceIntervalBracketsFidelity) {
    auto p = run_datapoint(build_protocol(ProtocolId::ES), total_model(0.9, 0.99), {1000000, 20000}, 2);
    EXPECT_LE(p.ci_low, p.fidelity);
    EXPECT_GE(p.ci_high, p.fidelity);
    EXPECT_LT(p.ci_high - p.ci_low, 0.02);
}

TEST(Engine, RejectsBadInputs) {
    NoiseModel bad;
    bad.p_gate1 = 2;
    EXPECT_THROW(run_datapoint(build_protocol(ProtocolId::ES), bad, {}, 1), std::invalid_argument);
    EXPECT_THROW(run_datapoint(build_protocol(ProtocolId::ES), NoiseModel{}, {0, 10}, 1), std::invalid_argument);
    Circuit broken = build_protocol(ProtocolId::ES);
    broken.outputs.pop_back();
    EXPECT_THROW(FrameSimulator{broken}, std::invalid_argument);
}

TEST(Sweep, Coordinates) {
    SweepSpec s;
    s.variable = SweepVariable::FOperation;
    s.start = 0.98;
    s.stop = 1.0;
    s.step = 0.0005;
    auto c = s.coordinates();
    ASSERT_EQ(c.size(), 41u);
    EXPECT_DOUBLE_EQ(c.front(), 0.98);
    EXPECT_DOUBLE_EQ(c[39], 0.9995);
    EXPECT_DOUBLE_EQ(c.back(), 1.0);

    SweepSpec in;
    EXPECT_EQ(in.coordinates().size(), 51u);
    in.start = in.stop = 0.5;
    ASSERT_EQ(in.coordinates().size(), 1u);
    EXPECT_DOUBLE_EQ(in.coordinates()[0], 0.5);
}

TEST(Sweep, ModelMapping) {
    SweepSpec s;
    s.variable = SweepVariable::FOperation;
    s.f_input = 0.98;
    auto m = s.model_at(0.99);
    EXPECT_DOUBLE_EQ(m.p_init, 0.02);
    EXPECT_DOUBLE_EQ(m.p_gate1, 0.01);
    EXPECT_DOUBLE_EQ(m.p_gate2, 0.01);
    EXPECT_DOUBLE_EQ(m.p_meas, 0.01);
    EXPECT_DOUBLE_EQ(m.p_mem, 0.01);
    EXPECT_EQ(s.model_at(1.0).p_gate2, 0.0);

    s.memory_ideal = true;
    EXPECT_TRUE(s.model_at(0.99).memory_ideal);

    SweepSpec mem;
    mem.variable = SweepVariable::FMemory;
    mem.f_operation = 0.99;
    auto mm = mem.model_at(0.995);
    EXPECT_DOUBLE_EQ(mm.p_mem, 0.005);
    EXPECT_DOUBLE_EQ(mm.p_gate1, 0.01);
    EXPECT_DOUBLE_EQ(mm.p_init, 0.0);
}

TEST(Sweep, Validation) {
    SweepSpec s;
    EXPECT_NO_THROW(s.validate());
    s.f_input = 0.9;
    EXPECT_THROW(s.validate(), std::invalid_argument);
    s = {};
    s.step = 0;
    EXPECT_THROW(s.validate(), std::invalid_argument);
    s = {};
    s.start = 0.9;
    s.stop = 0.8;
    EXPECT_THROW(s.validate(), std::invalid_argument);
    s = {};
    s.memory_ideal = true;
    s.f_memory = 0.99;
    EXPECT_THROW(s.validate(), std::invalid_argument);
    s = {};
    s.protocols.clear();
    EXPECT_THROW(s.validate(), std::invalid_argument);
    EXPECT_EQ(parse_sweep_variable("F_operation"), SweepVariable::FOperation);
    EXPECT_THROW(parse_sweep_variable("F_gate"), std::invalid_argument);
}

TEST(Sweep, RunsEveryProtocolAndCoordinate) {
    SweepSpec s;
    s.start = 0.9;
    s.stop = 1.0;
    s.step = 0.05;
    s.rule = {1000, 2000};
    size_t calls = 0;
    auto out = run_sweep(s, 1, [&](const std::string &, size_t, size_t n, const DataPoint &) {
        calls++;
        EXPECT_EQ(n, 3u);
    });
    ASSERT_EQ(out.size(), 4u);
    EXPECT_EQ(calls, 12u);
    for (const auto &series : out) {
        ASSERT_EQ(series.points.size(), 3u);
        EXPECT_EQ(series.points.back().fidelity, 1.0);
        EXPECT_DOUBLE_EQ(series.points[1].coordinate, 0.95);
    }
}
