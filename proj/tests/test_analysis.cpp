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

#include <set>

#include "mqnc/analysis.hpp"

using namespace mqnc;

TEST(Fold, StabilizersMapToIdentity) {
    for (auto kind : {PairKind::BellPhiPlus, PairKind::TwoQubitCluster}) {
        for (auto s : stabilizer_group(kind)) {
            EXPECT_EQ(fold(s, kind), PauliPair{});
        }
    }
    EXPECT_EQ(fold(PauliPair::parse("XX"), PairKind::BellPhiPlus), PauliPair{});
    EXPECT_EQ(fold(PauliPair::parse("XZ"), PairKind::TwoQubitCluster), PauliPair{});
    EXPECT_EQ(fold(PauliPair::parse("ZZ"), PairKind::TwoQubitCluster), PauliPair::parse("IY"));
}

TEST(Fold, StabilizerGroupsAreAbelianGroups) {
    for (auto kind : {PairKind::BellPhiPlus, PairKind::TwoQubitCluster}) {
        auto g = stabilizer_group(kind);
        std::set<int> members;
        for (auto a : g) {
            members.insert(a.index());
        }
        for (auto a : g) {
            for (auto b : g) {
                EXPECT_TRUE(members.count(compose(a, b).index()));
                EXPECT_FALSE(anticommute(a, b));
            }
        }
    }
}

// Brute force over all 16 x 2 cases: the representative lies in the coset, is
// its smallest member, is shared by the whole coset and folds to itself.
TEST(Fold, CosetRepresentativeBruteForce) {
    for (auto kind : {PairKind::BellPhiPlus, PairKind::TwoQubitCluster}) {
        std::set<int> reps;
        for (int k = 0; k < 16; k++) {
            auto p = PauliPair::from_index(k);
            auto r = fold(p, kind);
            int smallest = 16;
            bool in_coset = false;
            for (auto s : stabilizer_group(kind)) {
                auto member = compose(p, s);
                smallest = std::min(smallest, member.index());
                in_coset = in_coset || member == r;
                EXPECT_EQ(fold(member, kind), r);
            }
            EXPECT_TRUE(in_coset);
            EXPECT_EQ(r.index(), smallest);
            EXPECT_EQ(fold(r, kind), r);
            EXPECT_EQ(fold_table(kind)[static_cast<size_t>(k)], r.index());
            reps.insert(r.index());
        }
        EXPECT_EQ(reps.size(), 4u);
    }
}

TEST(Histogram, Counting) {
    ErrorHistogram h;
    h.add(PauliPair{}, 6);
    h.add(PauliPair::parse("IX"), 3);
    h.add(PauliPair::parse("ZZ"));
    EXPECT_EQ(h.total(), 10u);
    EXPECT_EQ(h.errors(), 4u);
    EXPECT_DOUBLE_EQ(h.probability(PauliPair::parse("IX")), 0.3);
    ErrorHistogram g = h;
    g += h;
    EXPECT_EQ(g.total(), 20u);
    EXPECT_DOUBLE_EQ(ErrorHistogram{}.probability(PauliPair{}), 0.0);
}

TEST(Statistics, JointFidelity) {
    DataPoint p;
    EXPECT_THROW(joint_fidelity(p), std::invalid_argument);
    p.trials = 200;
    p.errors = 50;
    EXPECT_DOUBLE_EQ(joint_fidelity(p), 0.75);
}

TEST(Statistics, WilsonInterval) {
    auto [lo, hi] = wilson_interval(50, 100);
    EXPECT_NEAR(lo, 0.4038, 1e-4);
    EXPECT_NEAR(hi, 0.5962, 1e-4);
    auto [lo0, hi0] = wilson_interval(0, 100);
    EXPECT_NEAR(lo0, 0.0, 1e-12);
    EXPECT_NEAR(hi0, 0.0370, 1e-4);
    auto [lo1, hi1] = wilson_interval(100, 100);
    EXPECT_NEAR(lo1, 0.9630, 1e-4);
    EXPECT_NEAR(hi1, 1.0, 1e-12);
    auto [a, b] = wilson_interval(0, 0);
    EXPECT_EQ(a, 0.0);
    EXPECT_EQ(b, 1.0);
}

TEST(Statistics, Crossing) {
    EXPECT_DOUBLE_EQ(*crossing({{0.0, 0.0}, {1.0, 1.0}}, 0.5), 0.5);
    EXPECT_DOUBLE_EQ(*crossing({{0.0, 1.0}, {2.0, 0.0}}, 0.25), 1.5);
    EXPECT_DOUBLE_EQ(*crossing({{0.0, 0.2}, {1.0, 0.5}, {2.0, 0.9}}, 0.5), 1.0);
    EXPECT_DOUBLE_EQ(*crossing({{0.0, 0.2}, {1.0, 0.4}, {2.0, 0.5}}, 0.5), 2.0);
    EXPECT_FALSE(crossing({{0.0, 0.6}, {1.0, 0.9}}, 0.5).has_value());
    EXPECT_FALSE(crossing(std::vector<std::pair<double, double>>{}, 0.5).has_value());
    Series s{"X", {}};
    for (int i = 0; i <= 4; i++) {
        DataPoint p;
        p.coordinate = i;
        p.fidelity = 0.2 * i;
        s.points.push_back(p);
    }
    EXPECT_NEAR(*crossing(s, 0.5), 2.5, 1e-12);
}

TEST(Export, CsvHeaderIsStable) {
    Series s{"MQNC", {}};
    DataPoint p;
    p.coordinate = 0.99;
    p.trials = 10;
    p.errors = 1;
    p.fidelity = 0.9;
    p.outputs.push_back({{0, 5, PairKind::TwoQubitCluster}, {}, {}});
    s.points.push_back(p);
    std::string csv = series_csv({s}, false);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "coordinate,protocol,trials,errors,fidelity,ci_low,ci_high");
    EXPECT_NE(csv.find("0.99,MQNC,10,1,0.9"), std::string::npos);
    std::string hist = series_csv({s}, true);
    std::string header = hist.substr(0, hist.find('\n'));
    EXPECT_EQ(header.rfind("coordinate,protocol,trials,errors,fidelity,ci_low,ci_high,out0_raw_II,out0_raw_IX", 0),
              0u);
    EXPECT_NE(header.find("out0_folded_ZZ"), std::string::npos);
    EXPECT_NE(series_json({s}, true).find("\"folded\""), std::string::npos);
}

TEST(Export, DistributionSeries) {
    DataPoint p;
    p.outputs.push_back({{0, 5, PairKind::BellPhiPlus}, {}, {}});
    p.outputs[0].raw.add(PauliPair::parse("XI"), 3);
    p.outputs[0].raw.add(PauliPair{}, 1);
    auto d = distribution_series({p}, 0, false);
    EXPECT_DOUBLE_EQ(d.curves[static_cast<size_t>(PauliPair::parse("XI").index())][0], 0.75);
    EXPECT_THROW(distribution_series({p}, 1, false), std::out_of_range);
}
