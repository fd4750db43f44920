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

#include <complex>
#include <random>

#include "mqnc/engine.hpp"
#include "mqnc/protocols.hpp"
#include "mqnc/tableau.hpp"

using namespace mqnc;

namespace {

constexpr ProtocolId kAll[] = {ProtocolId::MQNC, ProtocolId::QNC, ProtocolId::ES, ProtocolId::ESP};

// Dense state vector; qubit q is bit q of the basis index.
class StateVector {
   public:
    explicit StateVector(int n) : n_(n), amp_(size_t{1} << n) { amp_[0] = 1; }

    void apply1(int q, const std::array<std::complex<double>, 4> &u) {
        const size_t bit = size_t{1} << q;
        for (size_t i = 0; i < amp_.size(); i++) {
            if (i & bit) {
                continue;
            }
            auto a = amp_[i], b = amp_[i | bit];
            amp_[i] = u[0] * a + u[1] * b;
            amp_[i | bit] = u[2] * a + u[3] * b;
        }
    }
    void h(int q) {
        const double r = 1 / std::sqrt(2.0);
        apply1(q, {r, r, r, -r});
    }
    void s(int q) { apply1(q, {1, 0, 0, std::complex<double>(0, 1)}); }
    void cz(int a, int b) {
        for (size_t i = 0; i < amp_.size(); i++) {
            if (((i >> a) & 1) && ((i >> b) & 1)) {
                amp_[i] = -amp_[i];
            }
        }
    }
    void cnot(int c, int t) {
        for (size_t i = 0; i < amp_.size(); i++) {
            if (((i >> c) & 1) && !((i >> t) & 1)) {
                std::swap(amp_[i], amp_[i | (size_t{1} << t)]);
            }
        }
    }
    double prob_one(int q) const {
        double p = 0;
        for (size_t i = 0; i < amp_.size(); i++) {
            if ((i >> q) & 1) {
                p += std::norm(amp_[i]);
            }
        }
        return p;
    }
    void project(int q, bool v) {
        double norm = 0;
        for (size_t i = 0; i < amp_.size(); i++) {
            if ((((i >> q) & 1) != 0) != v) {
                amp_[i] = 0;
            }
            norm += std::norm(amp_[i]);
        }
        for (auto &a : amp_) {
            a /= std::sqrt(norm);
        }
    }
    // <psi| P |psi> for a signed Pauli string.
    double expectation(const PauliString &p) const {
        std::complex<double> total = 0;
        for (size_t i = 0; i < amp_.size(); i++) {
            size_t j = i;
            std::complex<double> phase = 1;
            for (int q = 0; q < n_; q++) {
                bool x = (p.xs >> q) & 1, z = (p.zs >> q) & 1, bit = (i >> q) & 1;
                if (z && bit) {
                    phase = -phase;
                }
                if (x && z) {
                    phase *= std::complex<double>(0, 1);
                }
                if (x) {
                    j ^= size_t{1} << q;
                }
            }
            total += std::conj(amp_[j]) * phase * amp_[i];
        }
        return (p.negative ? -1.0 : 1.0) * total.real();
    }

   private:
    int n_;
    std::vector<std::complex<double>> amp_;
};

}  // namespace

TEST(Tableau, BellPairStabilizers) {
    Tableau t(2);
    prepare_pair(t, PairKind::BellPhiPlus, 0, 1);
    EXPECT_TRUE(t.stabilizes(PauliString::from_dense("+XX")));
    EXPECT_TRUE(t.stabilizes(PauliString::from_dense("+ZZ")));
    EXPECT_TRUE(t.stabilizes(PauliString::from_dense("-YY")));
    EXPECT_FALSE(t.stabilizes(PauliString::from_dense("-XX")));
    EXPECT_FALSE(t.stabilizes(PauliString::from_dense("+XI")));
    EXPECT_TRUE(t.is_consistent());
}

TEST(Tableau, ClusterPairStabilizers) {
    Tableau t(3);
    prepare_pair(t, PairKind::TwoQubitCluster, 0, 2);
    EXPECT_TRUE(t.stabilizes(PauliString::from_sparse("X0 Z2", 3)));
    EXPECT_TRUE(t.stabilizes(PauliString::from_sparse("Z0 X2", 3)));
    EXPECT_TRUE(t.stabilizes(PauliString::from_sparse("Z1", 3)));
}

TEST(Tableau, ForcingImpossibleOutcomeThrows) {
    Tableau t(2);
    EXPECT_FALSE(t.is_random_z(0));
    EXPECT_THROW(t.measure_z(0, true), std::logic_error);
    auto o = t.measure_z(0, false);
    EXPECT_TRUE(o.deterministic);
    EXPECT_FALSE(o.value);
    t.h(1);
    EXPECT_TRUE(t.is_random_z(1));
    auto r = t.measure_z(1, true);
    EXPECT_FALSE(r.deterministic);
    EXPECT_TRUE(r.value);
    EXPECT_TRUE(t.stabilizes(PauliString::from_sparse("-Z1", 2)));
}

TEST(Tableau, BasisMeasurementsLeaveEigenstates) {
    for (auto basis : {Basis::X, Basis::Y, Basis::Z}) {
        for (bool v : {false, true}) {
            Tableau t(1);
            if (basis == Basis::Z) {
                t.h(0);
            }
            auto o = t.measure(basis, 0, v);
            EXPECT_EQ(o.value, v);
            PauliString p{1};
            p.set(0, basis_pauli(basis));
            p.negative = v;
            EXPECT_TRUE(t.stabilizes(p));
            EXPECT_TRUE(t.measure(basis, 0).deterministic);
        }
    }
}

TEST(Tableau, PauliStringParsing) {
    auto p = PauliString::from_sparse("-X0 Y3", 5);
    EXPECT_EQ(p.str(), "-X__Y_");
    EXPECT_EQ(PauliString::from_dense(p.str()), p);
    EXPECT_THROW(PauliString::from_sparse("X9", 4), std::out_of_range);
}

TEST(Tableau, MatchesStateVectorOnRandomCircuits) {
    std::mt19937_64 rng(12345);
    const int n = 5;
    for (int trial = 0; trial < 200; trial++) {
        Tableau t(n, trial);
        StateVector sv(n);
        for (int g = 0; g < 40; g++) {
            int kind = static_cast<int>(rng() % 7);
            int a = static_cast<int>(rng() % n);
            int b = static_cast<int>(rng() % (n - 1));
            b += b >= a;
            switch (kind) {
                case 0:
                    t.h(a), sv.h(a);
                    break;
                case 1:
                    t.s(a), sv.s(a);
                    break;
                case 2:
                    t.cz(a, b), sv.cz(a, b);
                    break;
                case 3:
                    t.cnot(a, b), sv.cnot(a, b);
                    break;
                case 4:
                    t.s_dag(a), sv.s(a), sv.s(a), sv.s(a);
                    break;
                case 5:
                    t.apply_pauli(a, Pauli::Y), sv.h(a), sv.s(a), sv.s(a), sv.h(a), sv.s(a), sv.s(a);
                    break;
                default: {
                    double p1 = sv.prob_one(a);
                    bool random = p1 > 1e-9 && p1 < 1 - 1e-9;
                    ASSERT_EQ(t.is_random_z(a), random);
                    bool forced = (rng() & 1) != 0;
                    auto o = t.measure_z(a, random ? std::optional<bool>(forced) : std::nullopt);
                    EXPECT_EQ(o.deterministic, !random);
                    if (!random) {
                        EXPECT_EQ(o.value, p1 > 0.5);
                    }
                    sv.project(a, o.value);
                }
            }
        }
        ASSERT_TRUE(t.is_consistent());
        for (const auto &s : t.stabilizers()) {
            EXPECT_NEAR(sv.expectation(s), 1.0, 1e-9) << s.str();
        }
    }
}

TEST(Verify, AllProtocolsPass) {
    for (auto id : kAll) {
        auto r = verify_protocol(build_protocol(id));
        EXPECT_TRUE(r.passed()) << r.text();
        EXPECT_TRUE(r.exhaustive);
    }
}

TEST(Verify, ReportsIntermediateChecks) {
    auto mq = verify_protocol(build_protocol(ProtocolId::MQNC));
    std::string text = mq.text();
    EXPECT_NE(text.find("X0 Z5 sign t8"), std::string::npos);
    EXPECT_NE(text.find("Z0 X5 sign t9"), std::string::npos);
    auto qnc = verify_protocol(build_protocol(ProtocolId::QNC));
    EXPECT_NE(qnc.text().find("X0 X1 X3"), std::string::npos);
    EXPECT_NE(qnc.text().find("Phi+"), std::string::npos);
    EXPECT_NE(mq.json().find("\"passed\""), std::string::npos);
}

TEST(Verify, DroppedConditionFailsHalfTheBranches) {
    for (auto id : kAll) {
        Circuit c = build_protocol(id);
        bool mutated = false;
        for (auto &step : c.steps) {
            for (auto &op : step.ops) {
                auto *b = std::get_if<Byproduct>(&op);
                if (!mutated && b && b->condition != 0) {
                    b->condition &= b->condition - 1;  // drop the lowest label
                    mutated = true;
                }
            }
        }
        ASSERT_TRUE(mutated);
        auto r = verify_protocol(c);
        EXPECT_FALSE(r.passed());
        EXPECT_EQ(r.failed_branches * 2, r.branches) << protocol_name(id);
        ASSERT_TRUE(r.first_failure.has_value());
        EXPECT_FALSE(r.first_failure->assignment.empty());
    }
}

// Every single Pauli injected anywhere must leave the same output residual in
// the frame engine as in the exact tableau run, for several outcome branches.
TEST(FrameTableauAgreement, ExhaustiveSingleInjections) {
    for (auto id : kAll) {
        Circuit c = build_protocol(id);
        FrameSimulator sim(c);
        std::vector<std::vector<PauliString>> gens;
        for (const auto &o : c.outputs) {
            gens.push_back(output_generators(o, c.qubit_count));
        }
        std::mt19937_64 rng(7);
        std::vector<OutcomePolicy> branches;
        for (int b = 0; b < 4; b++) {
            OutcomePolicy p{OutcomePolicy::Kind::Forced, {}, 0};
            for (int k = 0; k < 16; k++) {
                p.bits.push_back(b == 0 ? false : b == 1 ? true : (rng() & 1) != 0);
            }
            branches.push_back(p);
        }
        int checked = 0;
        for (int step = kInitSteps; step <= static_cast<int>(c.depth()); step++) {
            for (int q = 0; q < c.qubit_count; q++) {
                for (auto p : {Pauli::X, Pauli::Y, Pauli::Z}) {
                    std::vector<Injection> inj{{step, q, p}};
                    TrialOutcome frame = sim.run_injected(inj);
                    for (const auto &policy : branches) {
                        TableauRun run = run_tableau(c, policy, inj);
                        auto syndrome = output_syndrome(c, run.tableau);
                        for (size_t o = 0; o < c.outputs.size(); o++) {
                            const auto &out = c.outputs[o];
                            uint8_t expected = 0;
                            for (size_t k = 0; k < gens[o].size(); k++) {
                                PauliPair g{gens[o][k].get(out.a), gens[o][k].get(out.b)};
                                if (anticommute(frame.raw[o], g)) {
                                    expected |= static_cast<uint8_t>(1u << k);
                                }
                            }
                            ASSERT_EQ(syndrome[o], expected)
                                << protocol_name(id) << " step " << step << " qubit " << q << " "
                                << pauli_char(p) << " output " << o;
                        }
                    }
                    checked++;
                }
            }
        }
        EXPECT_EQ(checked, 3 * c.qubit_count * (static_cast<int>(c.depth()) - kInitSteps + 1));
    }
}

TEST(FrameTableauAgreement, NoInjectionIsIdeal) {
    for (auto id : kAll) {
        Circuit c = build_protocol(id);
        auto out = FrameSimulator(c).run_injected({});
        EXPECT_FALSE(out.any_error);
        auto run = run_tableau(c, OutcomePolicy{OutcomePolicy::Kind::Random, {}, 99});
        for (auto s : output_syndrome(c, run.tableau)) {
            EXPECT_EQ(s, 0);
        }
    }
}
