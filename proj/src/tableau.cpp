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

#include "mqnc/tableau.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace mqnc {

namespace {

bool symplectic(uint64_t x1, uint64_t z1, uint64_t x2, uint64_t z2) {
    return (std::popcount((x1 & z2) ^ (z1 & x2)) & 1) != 0;
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

void PauliString::set(int q, Pauli p) {
    uint64_t m = uint64_t{1} << q;
    xs = x_bit(p) ? (xs | m) : (xs & ~m);
    zs = z_bit(p) ? (zs | m) : (zs & ~m);
}

PauliString PauliString::from_sparse(std::string_view text, int n) {
    PauliString out;
    out.n = n;
    size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && text[i] == ' ') {
            i++;
        }
    };
    skip();
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        out.negative = text[i] == '-';
        i++;
    }
    while (true) {
        skip();
        if (i >= text.size()) {
            break;
        }
        Pauli p = parse_pauli(text[i++]);
        size_t start = i;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
            i++;
        }
        if (start == i) {
            throw std::invalid_argument("missing qubit index in '" + std::string(text) + "'");
        }
        int q = std::stoi(std::string(text.substr(start, i - start)));
        if (q < 0 || q >= n) {
            throw std::out_of_range("qubit " + std::to_string(q) + " outside " + std::to_string(n));
        }
        out.set(q, compose(out.get(q), p));
    }
    return out;
}

PauliString PauliString::from_dense(std::string_view text) {
    PauliString out;
    if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
        out.negative = text[0] == '-';
        text.remove_prefix(1);
    }
    if (text.size() > static_cast<size_t>(Tableau::kMaxQubits)) {
        throw std::out_of_range("Pauli string longer than 64 qubits");
    }
    out.n = static_cast<int>(text.size());
    for (int q = 0; q < out.n; q++) {
        out.set(q, parse_pauli(text[static_cast<size_t>(q)]));
    }
    return out;
}

std::string PauliString::str() const {
    std::string s(1, negative ? '-' : '+');
    for (int q = 0; q < n; q++) {
        Pauli p = get(q);
        s.push_back(p == Pauli::I ? '_' : pauli_char(p));
    }
    return s;
}

Tableau::Tableau(int n, uint64_t seed) : n_(n), rng_(seed) {
    if (n < 1 || n > kMaxQubits) {
        throw std::out_of_range("Tableau supports 1..64 qubits");
    }
    rows_.resize(static_cast<size_t>(2 * n));
    for (int q = 0; q < n; q++) {
        rows_[static_cast<size_t>(q)].x = uint64_t{1} << q;
        rows_[static_cast<size_t>(n + q)].z = uint64_t{1} << q;
    }
}

void Tableau::check(int q) const {
    if (q < 0 || q >= n_) {
        throw std::out_of_range("qubit " + std::to_string(q) + " outside tableau of size " + std::to_string(n_));
    }
}

void Tableau::rowmult(Row &into, const Row &from) {
    // Exponent of i picked up by from * into, per qubit (Aaronson-Gottesman g).
    const uint64_t x1 = from.x, z1 = from.z, x2 = into.x, z2 = into.z;
    const uint64_t y1 = x1 & z1;
    const uint64_t xo = x1 & ~z1;
    const uint64_t zo = ~x1 & z1;
    const uint64_t plus = (y1 & z2 & ~x2) | (xo & x2 & z2) | (zo & x2 & ~z2);
    const uint64_t minus = (y1 & x2 & ~z2) | (xo & z2 & ~x2) | (zo & x2 & z2);
    int e = 2 * (from.r ? 1 : 0) + 2 * (into.r ? 1 : 0) + std::popcount(plus) - std::popcount(minus);
    e = ((e % 4) + 4) % 4;
    into.r = e == 2;
    into.x ^= from.x;
    into.z ^= from.z;
}

void Tableau::h(int q) {
    check(q);
    const uint64_t m = uint64_t{1} << q;
    for (auto &row : rows_) {
        bool xb = row.x & m;
        bool zb = row.z & m;
        row.r ^= xb && zb;
        if (xb != zb) {
            row.x ^= m;
            row.z ^= m;
        }
    }
}

void Tableau::s(int q) {
    check(q);
    const uint64_t m = uint64_t{1} << q;
    for (auto &row : rows_) {
        bool xb = row.x & m;
        bool zb = row.z & m;
        row.r ^= xb && zb;
        if (xb) {
            row.z ^= m;
        }
    }
}

void Tableau::s_dag(int q) {
    check(q);
    const uint64_t m = uint64_t{1} << q;
    for (auto &row : rows_) {
        bool xb = row.x & m;
        bool zb = row.z & m;
        row.r ^= xb && !zb;
        if (xb) {
            row.z ^= m;
        }
    }
}

void Tableau::x(int q) {
    check(q);
    for (auto &row : rows_) {
        row.r ^= (row.z >> q) & 1;
    }
}

void Tableau::z(int q) {
    check(q);
    for (auto &row : rows_) {
        row.r ^= (row.x >> q) & 1;
    }
}

void Tableau::y(int q) {
    check(q);
    for (auto &row : rows_) {
        row.r ^= ((row.x ^ row.z) >> q) & 1;
    }
}

void Tableau::apply_pauli(int q, Pauli p) {
    if (x_bit(p) && z_bit(p)) {
        y(q);
    } else if (x_bit(p)) {
        x(q);
    } else if (z_bit(p)) {
        z(q);
    }
}

void Tableau::cnot(int c, int t) {
    check(c);
    check(t);
    if (c == t) {
        throw std::invalid_argument("CNOT needs two distinct qubits");
    }
    for (auto &row : rows_) {
        bool xc = (row.x >> c) & 1;
        bool zc = (row.z >> c) & 1;
        bool xt = (row.x >> t) & 1;
        bool zt = (row.z >> t) & 1;
        row.r ^= xc && zt && (xt == zc);
        row.x ^= uint64_t{xc} << t;
        row.z ^= uint64_t{zt} << c;
    }
}

void Tableau::cz(int a, int b) {
    h(b);
    cnot(a, b);
    h(b);
}

bool Tableau::is_random_z(int q) const {
    check(q);
    for (int i = n_; i < 2 * n_; i++) {
        if ((rows_[static_cast<size_t>(i)].x >> q) & 1) {
            return true;
        }
    }
    return false;
}

Tableau::Outcome Tableau::measure_z(int q, std::optional<bool> forced) {
    check(q);
    int p = -1;
    for (int i = n_; i < 2 * n_; i++) {
        if ((rows_[static_cast<size_t>(i)].x >> q) & 1) {
            p = i;
            break;
        }
    }
    if (p >= 0) {
        const Row pivot = rows_[static_cast<size_t>(p)];
        for (int i = 0; i < 2 * n_; i++) {
            if (i != p && ((rows_[static_cast<size_t>(i)].x >> q) & 1)) {
                rowmult(rows_[static_cast<size_t>(i)], pivot);
            }
        }
        bool value = forced.has_value() ? *forced : (rng_() & 1) != 0;
        rows_[static_cast<size_t>(p - n_)] = pivot;
        rows_[static_cast<size_t>(p)] = Row{0, uint64_t{1} << q, value};
        return {value, false};
    }
    Row scratch;
    for (int i = 0; i < n_; i++) {
        if ((rows_[static_cast<size_t>(i)].x >> q) & 1) {
            rowmult(scratch, rows_[static_cast<size_t>(n_ + i)]);
        }
    }
    if (forced.has_value() && *forced != scratch.r) {
        throw std::logic_error("cannot force outcome " + std::to_string(int(*forced)) + " on qubit " +
                               std::to_string(q) + ": the result is deterministic");
    }
    return {scratch.r, true};
}

Tableau::Outcome Tableau::measure(Basis basis, int q, std::optional<bool> forced) {
    switch (basis) {
        case Basis::Z:
            return measure_z(q, forced);
        case Basis::X: {
            h(q);
            auto r = measure_z(q, forced);
            h(q);
            return r;
        }
        case Basis::Y: {
            s_dag(q);
            h(q);
            auto r = measure_z(q, forced);
            h(q);
            s(q);
            return r;
        }
    }
    throw std::invalid_argument("unknown basis");
}

bool Tableau::stabilizes(const PauliString &p) const {
    if (p.n != n_) {
        return false;
    }
    for (int i = n_; i < 2 * n_; i++) {
        const auto &row = rows_[static_cast<size_t>(i)];
        if (symplectic(row.x, row.z, p.xs, p.zs)) {
            return false;
        }
    }
    Row acc;
    for (int i = 0; i < n_; i++) {
        const auto &d = rows_[static_cast<size_t>(i)];
        if (symplectic(d.x, d.z, p.xs, p.zs)) {
            rowmult(acc, rows_[static_cast<size_t>(n_ + i)]);
        }
    }
    return acc.x == p.xs && acc.z == p.zs && acc.r == p.negative;
}

std::vector<PauliString> Tableau::stabilizers() const {
    std::vector<PauliString> out;
    for (int i = n_; i < 2 * n_; i++) {
        const auto &row = rows_[static_cast<size_t>(i)];
        out.push_back({n_, row.x, row.z, row.r});
    }
    return out;
}

bool Tableau::is_consistent() const {
    for (int i = 0; i < 2 * n_; i++) {
        for (int j = i + 1; j < 2 * n_; j++) {
            const auto &a = rows_[static_cast<size_t>(i)];
            const auto &b = rows_[static_cast<size_t>(j)];
            bool expect = (j == i + n_);
            if (symplectic(a.x, a.z, b.x, b.z) != expect) {
                return false;
            }
        }
    }
    return true;
}

void prepare_pair(Tableau &t, PairKind kind, int a, int b) {
    if (kind == PairKind::BellPhiPlus) {
        t.h(a);
        t.cnot(a, b);
    } else {
        t.h(a);
        t.h(b);
        t.cz(a, b);
    }
}

std::vector<PauliString> output_generators(const OutputPair &out, int n) {
    auto two = [&](Pauli pa, Pauli pb) {
        PauliString s;
        s.n = n;
        s.set(out.a, pa);
        s.set(out.b, pb);
        return s;
    };
    if (out.kind == PairKind::BellPhiPlus) {
        return {two(Pauli::X, Pauli::X), two(Pauli::Z, Pauli::Z)};
    }
    return {two(Pauli::X, Pauli::Z), two(Pauli::Z, Pauli::X)};
}

TableauRun run_tableau(const Circuit &c, const OutcomePolicy &policy, const std::vector<Injection> &injections,
                       const StepHook &hook) {
    TableauRun run{Tableau(std::max(c.qubit_count, 1), policy.seed), std::vector<bool>(c.labels.size(), false),
                   std::vector<bool>(c.labels.size(), false)};
    Tableau &t = run.tableau;
    size_t next_bit = 0;
    auto readout = [&](Basis basis, int q, int label) {
        std::optional<bool> forced;
        if (policy.kind == OutcomePolicy::Kind::Forced && t.is_random_basis(basis, q)) {
            forced = next_bit < policy.bits.size() ? policy.bits[next_bit] : false;
            next_bit++;
        }
        auto r = t.measure(basis, q, forced);
        run.outcomes[static_cast<size_t>(label)] = r.value;
        run.random[static_cast<size_t>(label)] = !r.deterministic;
    };
    auto inject = [&](int step) {
        for (const auto &inj : injections) {
            if (inj.step == step) {
                t.apply_pauli(inj.qubit, inj.pauli);
            }
        }
    };

    for (size_t s = 0; s < c.steps.size(); s++) {
        inject(static_cast<int>(s));
        for (const auto &op : c.steps[s].ops) {
            std::visit(overloaded{
                           [&](const Entangle &e) { prepare_pair(t, e.kind, e.a, e.b); },
                           [&](const Gate1 &g) {
                               switch (g.gate) {
                                   case Gate1Kind::H:
                                       t.h(g.q);
                                       break;
                                   case Gate1Kind::S:
                                       t.s(g.q);
                                       break;
                                   case Gate1Kind::X:
                                       t.x(g.q);
                                       break;
                                   case Gate1Kind::Y:
                                       t.y(g.q);
                                       break;
                                   case Gate1Kind::Z:
                                       t.z(g.q);
                                       break;
                               }
                           },
                           [&](const Gate2 &g) {
                               if (g.gate == Gate2Kind::CZ) {
                                   t.cz(g.a, g.b);
                               } else {
                                   t.cnot(g.a, g.b);
                               }
                           },
                           [&](const Measure &m) { readout(m.basis, m.q, m.label); },
                           [&](const MeasurePair &m) {
                               readout(Basis::Z, m.a, m.label_a);
                               readout(Basis::Z, m.b, m.label_b);
                           },
                           [&](const Byproduct &b) {
                               bool fire = true;
                               if (b.condition != 0) {
                                   fire = false;
                                   for (size_t k = 0; k < run.outcomes.size(); k++) {
                                       if (((b.condition >> k) & 1) && run.outcomes[k]) {
                                           fire = !fire;
                                       }
                                   }
                               }
                               if (fire) {
                                   t.apply_pauli(b.q, b.pauli);
                               }
                           },
                       },
                       op);
        }
        if (hook) {
            hook(static_cast<int>(s), t, run.outcomes);
        }
    }
    inject(static_cast<int>(c.steps.size()));
    return run;
}

std::vector<uint8_t> output_syndrome(const Circuit &c, const Tableau &t) {
    std::vector<uint8_t> out;
    for (const auto &o : c.outputs) {
        uint8_t bits = 0;
        auto gens = output_generators(o, t.size());
        for (size_t k = 0; k < gens.size(); k++) {
            auto g = gens[k];
            if (t.stabilizes(g)) {
                continue;
            }
            g.negative = true;
            if (!t.stabilizes(g)) {
                throw std::logic_error("output pair (" + std::to_string(o.a) + "," + std::to_string(o.b) +
                                       ") is not in a stabilizer state of " + gens[k].str());
            }
            bits |= static_cast<uint8_t>(1u << k);
        }
        out.push_back(bits);
    }
    return out;
}

namespace {

int find_step(const Circuit &c, auto pred) {
    for (size_t s = 0; s < c.steps.size(); s++) {
        for (const auto &op : c.steps[s].ops) {
            if (pred(op)) {
                return static_cast<int>(s);
            }
        }
    }
    return -1;
}

SignedCheck signed_check(const Circuit &c, std::string name, std::string_view sparse,
                         std::initializer_list<int> sign_qubits) {
    SignedCheck out{std::move(name), PauliString::from_sparse(sparse, c.qubit_count), 0};
    for (int q : sign_qubits) {
        int k = c.label_index("t" + std::to_string(q));
        if (k < 0) {
            throw std::logic_error("waypoint sign refers to unmeasured qubit " + std::to_string(q));
        }
        out.sign_labels ^= uint64_t{1} << k;
    }
    return out;
}

}  // namespace

bool Tableau::is_random_basis(Basis basis, int q) const {
    check(q);
    const uint64_t m = uint64_t{1} << q;
    for (int i = n_; i < 2 * n_; i++) {
        const auto &row = rows_[static_cast<size_t>(i)];
        bool xb = row.x & m;
        bool zb = row.z & m;
        bool anti = false;
        switch (basis) {
            case Basis::X:
                anti = zb;
                break;
            case Basis::Y:
                anti = xb != zb;
                break;
            case Basis::Z:
                anti = xb;
                break;
        }
        if (anti) {
            return true;
        }
    }
    return false;
}

std::vector<Waypoint> protocol_waypoints(const Circuit &c) {
    std::vector<Waypoint> out;
    if (c.protocol == ProtocolId::MQNC) {
        int step = find_step(c, [](const Operation &op) {
            auto *m = std::get_if<Measure>(&op);
            return m && m->q == 8;
        });
        if (step >= 0 && c.label_index("t8") >= 0 && c.label_index("t9") >= 0) {
            out.push_back({"stabilizers after bottleneck X measurements",
                           step,
                           {signed_check(c, "X0 Z5 sign t8", "X0 Z5", {8}),
                            signed_check(c, "X1 Z4 sign t9", "X1 Z4", {9}),
                            signed_check(c, "Z1 X4 sign t8", "Z1 X4", {8}),
                            signed_check(c, "Z0 X5 sign t9", "Z0 X5", {9})}});
        }
    } else if (c.protocol == ProtocolId::QNC) {
        int step = find_step(c, [](const Operation &op) {
            auto *b = std::get_if<Byproduct>(&op);
            return b && b->q == 7;
        });
        if (step >= 0) {
            out.push_back({"GHZ states at the sources",
                           step,
                           {signed_check(c, "X0 X1 X3", "X0 X1 X3", {}), signed_check(c, "Z0 Z1", "Z0 Z1", {}),
                            signed_check(c, "Z1 Z3", "Z1 Z3", {}), signed_check(c, "X4 X5 X7", "X4 X5 X7", {}),
                            signed_check(c, "Z4 Z5", "Z4 Z5", {}), signed_check(c, "Z5 Z7", "Z5 Z7", {})}});
        }
        out.push_back({"final state Phi+(0,5) x Phi+(1,4)",
                       static_cast<int>(c.steps.size()) - 1,
                       {signed_check(c, "X0 X5", "X0 X5", {}), signed_check(c, "Z0 Z5", "Z0 Z5", {}),
                        signed_check(c, "X1 X4", "X1 X4", {}), signed_check(c, "Z1 Z4", "Z1 Z4", {})}});
    }
    return out;
}

namespace {

struct BranchResult {
    std::vector<bool> random_bits;  // the random readouts, in order
    std::vector<bool> outcomes;
    std::optional<std::pair<std::string, std::string>> failure;  // check, generator
};

BranchResult run_branch(const Circuit &c, const std::vector<Waypoint> &waypoints, const OutcomePolicy &policy) {
    BranchResult res;
    auto check_all = [&](const Tableau &t, const std::vector<bool> &outcomes, const Waypoint &w) {
        for (const auto &chk : w.checks) {
            PauliString p = chk.pauli;
            bool sign = false;
            for (size_t k = 0; k < outcomes.size(); k++) {
                if (((chk.sign_labels >> k) & 1) && outcomes[k]) {
                    sign = !sign;
                }
            }
            p.negative = p.negative != sign;
            if (!t.stabilizes(p) && !res.failure) {
                res.failure = {{w.name + ": " + chk.name, p.str()}};
            }
        }
    };
    auto hook = [&](int step, const Tableau &t, const std::vector<bool> &outcomes) {
        for (const auto &w : waypoints) {
            if (w.after_step == step) {
                check_all(t, outcomes, w);
            }
        }
    };
    auto run = run_tableau(c, policy, {}, hook);
    for (const auto &o : c.outputs) {
        for (const auto &g : output_generators(o, run.tableau.size())) {
            if (!run.tableau.stabilizes(g) && !res.failure) {
                res.failure = {{"output (" + std::to_string(o.a) + "," + std::to_string(o.b) + ") " +
                                    pair_kind_name(o.kind),
                                g.str()}};
            }
        }
    }
    // Recover the random readouts in order of occurrence.
    for (const auto &step : c.steps) {
        for (const auto &op : step.ops) {
            auto note = [&](int label) {
                if (run.random[static_cast<size_t>(label)]) {
                    res.random_bits.push_back(run.outcomes[static_cast<size_t>(label)]);
                }
            };
            if (const auto *m = std::get_if<Measure>(&op)) {
                note(m->label);
            } else if (const auto *m2 = std::get_if<MeasurePair>(&op)) {
                note(m2->label_a);
                note(m2->label_b);
            }
        }
    }
    res.outcomes = std::move(run.outcomes);
    return res;
}

}  // namespace

VerifyReport verify_protocol(const Circuit &c, uint64_t seed) {
    VerifyReport report;
    report.protocol = protocol_name(c.protocol);
    auto violations = validate(c);
    if (!violations.empty()) {
        report.first_failure = BranchFailure{0, {}, "circuit validation", violations.front().message};
        report.failed_branches = 1;
        return report;
    }
    const auto waypoints = protocol_waypoints(c);
    for (const auto &w : waypoints) {
        for (const auto &chk : w.checks) {
            report.checks.push_back(w.name + ": " + chk.name);
        }
    }
    for (const auto &o : c.outputs) {
        for (const auto &g : output_generators(o, c.qubit_count)) {
            report.checks.push_back("output " + g.str());
        }
    }

    auto record = [&](const BranchResult &r, uint64_t index) {
        report.branches++;
        if (r.failure) {
            report.failed_branches++;
            if (!report.first_failure) {
                BranchFailure f;
                f.branch = index;
                for (size_t k = 0; k < c.labels.size(); k++) {
                    f.assignment.emplace_back(c.labels[k], r.outcomes[k] ? 1 : 0);
                }
                f.check = r.failure->first;
                f.generator = r.failure->second;
                report.first_failure = f;
            }
        }
    };
    auto branch_index = [](const std::vector<bool> &bits) {
        uint64_t v = 0;
        for (bool b : bits) {
            v = (v << 1) | (b ? 1 : 0);
        }
        return v;
    };

    constexpr size_t kExhaustiveLimit = 12;
    constexpr int kSamples = 256;

    OutcomePolicy policy{OutcomePolicy::Kind::Forced, {}, seed};
    BranchResult first = run_branch(c, waypoints, policy);
    if (first.random_bits.size() > kExhaustiveLimit) {
        report.exhaustive = false;
        std::mt19937_64 rng(seed);
        for (int k = 0; k < kSamples; k++) {
            OutcomePolicy sampled{OutcomePolicy::Kind::Random, {}, rng()};
            auto r = run_branch(c, waypoints, sampled);
            record(r, branch_index(r.random_bits));
        }
        return report;
    }

    // Depth-first enumeration: flip the last 0 to 1 and drop everything after it.
    BranchResult current = std::move(first);
    while (true) {
        record(current, branch_index(current.random_bits));
        std::vector<bool> bits = current.random_bits;
        while (!bits.empty() && bits.back()) {
            bits.pop_back();
        }
        if (bits.empty()) {
            break;
        }
        bits.back() = true;
        policy.bits = bits;
        current = run_branch(c, waypoints, policy);
        if (current.random_bits.size() > kExhaustiveLimit) {
            throw std::logic_error("branch structure changed between runs");
        }
    }
    return report;
}

std::string VerifyReport::text() const {
    std::ostringstream out;
    out << protocol << ": " << (passed() ? "PASS" : "FAIL") << " (" << branches << (exhaustive ? "" : " sampled")
        << " branches, " << failed_branches << " failed, " << checks.size() << " checks per branch)\n";
    for (const auto &c : checks) {
        out << "  check " << c << '\n';
    }
    if (first_failure) {
        const auto &f = *first_failure;
        out << "  first failure: branch " << f.branch << ", " << f.check << " expected " << f.generator << '\n';
        if (!f.assignment.empty()) {
            out << "  outcomes:";
            for (const auto &[label, v] : f.assignment) {
                out << ' ' << label << '=' << v;
            }
            out << '\n';
        }
    }
    return out.str();
}

std::string VerifyReport::json() const {
    nlohmann::json j;
    j["protocol"] = protocol;
    j["passed"] = passed();
    j["exhaustive"] = exhaustive;
    j["branches"] = branches;
    j["failed_branches"] = failed_branches;
    j["checks"] = checks;
    if (first_failure) {
        nlohmann::json f;
        f["branch"] = first_failure->branch;
        f["check"] = first_failure->check;
        f["generator"] = first_failure->generator;
        nlohmann::json a = nlohmann::json::object();
        for (const auto &[label, v] : first_failure->assignment) {
            a[label] = v;
        }
        f["assignment"] = a;
        j["first_failure"] = f;
    } else {
        j["first_failure"] = nullptr;
    }
    return j.dump(2);
}

}  // namespace mqnc
