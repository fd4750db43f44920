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

#include <fstream>
#include <sstream>

#include "mqnc/protocols.hpp"
#include "mqnc/tableau.hpp"

using namespace mqnc;

namespace {

constexpr ProtocolId kAll[] = {ProtocolId::MQNC, ProtocolId::QNC, ProtocolId::ES, ProtocolId::ESP};

bool has_violation(const Circuit &c, const std::string &fragment) {
    for (const auto &v : validate(c)) {
        if (v.message.find(fragment) != std::string::npos) {
            return true;
        }
    }
    return false;
}

// Swaps (0,2) and (3,1) onto (0,1); (4,5) is a second, idle output.
Circuit small_swap() {
    CircuitBuilder b(ProtocolId::ES, 6);
    b.step()
        .entangle(PairKind::BellPhiPlus, 0, 2)
        .entangle(PairKind::BellPhiPlus, 3, 1)
        .entangle(PairKind::BellPhiPlus, 4, 5)
        .step();
    b.step().cnot(2, 3);
    b.step().gate1(Gate1Kind::H, 2);
    b.step().measure_pair(2, 3);
    b.step().byproduct(Pauli::X, 1, {3}).byproduct(Pauli::Z, 0, {2});
    b.output(0, 1, PairKind::BellPhiPlus).output(4, 5, PairKind::BellPhiPlus);
    return b.build();
}

}  // namespace

TEST(Circuit, ProtocolsValidate) {
    for (auto id : kAll) {
        Circuit c = build_protocol(id);
        EXPECT_TRUE(validate(c).empty()) << protocol_name(id);
        EXPECT_EQ(c.outputs.size(), 2u);
    }
}

TEST(Circuit, ResourceCounts) {
    struct Row {
        ProtocolId id;
        CircuitStats stats;
    };
    const Row rows[] = {
        {ProtocolId::MQNC, {14, 7, 14, 14, 8, 10, 10, 140}},
        {ProtocolId::QNC, {14, 7, 16, 11, 8, 10, 23, 322}},
        {ProtocolId::ES, {12, 6, 12, 8, 4, 4, 12, 144}},
        {ProtocolId::ESP, {12, 6, 8, 4, 4, 4, 6, 72}},
    };
    for (const auto &r : rows) {
        EXPECT_EQ(compute_stats(build_protocol(r.id)), r.stats) << protocol_name(r.id);
    }
}

TEST(Circuit, DepthReduction) {
    auto a = compute_stats(build_protocol(ProtocolId::MQNC));
    auto b = compute_stats(build_protocol(ProtocolId::QNC));
    EXPECT_DOUBLE_EQ(depth_reduction(a, b), 13.0 / 23.0);
    EXPECT_NEAR(100 * depth_reduction(a, b), 56.5, 0.05);
    EXPECT_DOUBLE_EQ(depth_reduction(b, b), 0.0);
    EXPECT_THROW(depth_reduction(a, CircuitStats{}), std::invalid_argument);
}

TEST(Circuit, DetectsOverlapInOneStep) {
    Circuit c = small_swap();
    c.steps[2].ops.push_back(Gate1{Gate1Kind::H, 3});
    EXPECT_TRUE(has_violation(c, "two operations in one step"));
}

TEST(Circuit, DetectsSameStepFeedforward) {
    Circuit c = small_swap();
    // Move the byproducts into the measurement step.
    auto &last = c.steps.back().ops;
    auto &meas = c.steps[c.steps.size() - 2].ops;
    meas.insert(meas.end(), last.begin(), last.end());
    c.steps.pop_back();
    EXPECT_TRUE(has_violation(c, "feedforward"));
}

TEST(Circuit, DetectsUseAfterMeasurement) {
    Circuit c = small_swap();
    c.steps.push_back({{Gate1{Gate1Kind::H, 2}}});
    EXPECT_TRUE(has_violation(c, "after its measurement"));
}

TEST(Circuit, DetectsStructuralErrors) {
    Circuit good = small_swap();
    ASSERT_TRUE(validate(good).empty());
    EXPECT_TRUE(verify_protocol(good).passed());

    Circuit c = good;
    c.steps[2].ops.push_back(Gate1{Gate1Kind::H, 9});
    EXPECT_TRUE(has_violation(c, "out of range"));

    c = good;
    c.steps[2].ops.push_back(Entangle{PairKind::BellPhiPlus, 0, 1});
    EXPECT_TRUE(has_violation(c, "initialization"));

    c = good;
    c.steps[1].ops.push_back(Gate1{Gate1Kind::H, 0});
    EXPECT_TRUE(has_violation(c, "initialization block"));

    c = good;
    c.outputs.push_back({0, 1, PairKind::BellPhiPlus});
    EXPECT_FALSE(validate(c).empty());

    c = good;
    c.steps.back().ops.push_back(Byproduct{Pauli::I, 0, 0});
    EXPECT_TRUE(has_violation(c, "identity byproduct"));

    c = good;
    c.labels.push_back("orphan");
    EXPECT_TRUE(has_violation(c, "never produced"));

    c = good;
    c.steps[2].ops.push_back(Gate2{Gate2Kind::CZ, 0, 0});
    EXPECT_TRUE(has_violation(c, "twice"));

    EXPECT_THROW(CircuitBuilder(ProtocolId::ES, 2).step().gate1(Gate1Kind::H, 5).build(), std::logic_error);
}

TEST(Circuit, TextRoundTrip) {
    for (auto id : kAll) {
        Circuit c = build_protocol(id);
        std::string text = to_text(c);
        Circuit back = parse_circuit(text);
        EXPECT_EQ(to_text(back), text);
        EXPECT_EQ(compute_stats(back), compute_stats(c));
        EXPECT_TRUE(verify_protocol(back).passed());
    }
}

TEST(Circuit, GoldenEsp) {
    std::ifstream in(std::string(MQNC_TEST_DATA_DIR) + "/golden/esp.txt");
    ASSERT_TRUE(in);
    std::stringstream buf;
    buf << in.rdbuf();
    EXPECT_EQ(to_text(build_protocol(ProtocolId::ESP)), buf.str());
}

TEST(Circuit, ParseErrors) {
    EXPECT_THROW(parse_circuit("protocol NOPE\n"), std::invalid_argument);
    EXPECT_THROW(parse_circuit("protocol ES\nqubits 2\nstep FOO 1\n"), std::invalid_argument);
    EXPECT_THROW(parse_circuit("protocol ES\nqubits 4\nstep BP X 1 if t9\n"), std::invalid_argument);
}

TEST(Circuit, ProtocolNames) {
    EXPECT_EQ(parse_protocol("mqnc"), ProtocolId::MQNC);
    EXPECT_EQ(parse_protocol("ES_p"), ProtocolId::ESP);
    EXPECT_EQ(parse_protocol("Qnc"), ProtocolId::QNC);
    EXPECT_THROW(parse_protocol("bfly"), std::invalid_argument);
    for (auto id : kAll) {
        EXPECT_EQ(parse_protocol(protocol_name(id)), id);
    }
}

TEST(Circuit, AsapNeverDeepensAndStaysCorrect) {
    for (auto id : kAll) {
        Circuit c = build_protocol(id);
        Circuit fast = reschedule_asap(c);
        EXPECT_TRUE(validate(fast).empty()) << protocol_name(id);
        EXPECT_LE(fast.depth(), c.depth());
        auto a = compute_stats(fast), b = compute_stats(c);
        EXPECT_EQ(a.measurements, b.measurements);
        EXPECT_EQ(a.single_qubit_gates, b.single_qubit_gates);
        EXPECT_EQ(a.two_qubit_gates, b.two_qubit_gates);
        EXPECT_TRUE(verify_protocol(fast).passed()) << protocol_name(id);
        EXPECT_EQ(reschedule_asap(fast).depth(), fast.depth());
    }
}

TEST(Circuit, ResourcePairsCoverEveryQubitOnce) {
    for (auto id : kAll) {
        Circuit c = build_protocol(id);
        std::vector<int> seen(static_cast<size_t>(c.qubit_count), 0);
        for (const auto &p : c.resource_pairs()) {
            seen[static_cast<size_t>(p.a)]++;
            seen[static_cast<size_t>(p.b)]++;
        }
        for (int s : seen) {
            EXPECT_EQ(s, 1);
        }
    }
}
