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

#include "mqnc/circuit.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <map>
#include <sstream>
#include <stdexcept>

namespace mqnc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string gate1_name(Gate1Kind g) {
    switch (g) {
        case Gate1Kind::H:
            return "H";
        case Gate1Kind::S:
            return "S";
        case Gate1Kind::X:
            return "X";
        case Gate1Kind::Y:
            return "Y";
        case Gate1Kind::Z:
            return "Z";
    }
    return "?";
}

char basis_char(Basis b) {
    switch (b) {
        case Basis::X:
            return 'X';
        case Basis::Y:
            return 'Y';
        case Basis::Z:
            return 'Z';
    }
    return '?';
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    size_t start = 0;
    while (start <= s.size()) {
        size_t end = s.find(sep, start);
        if (end == std::string_view::npos) {
            end = s.size();
        }
        out.push_back(s.substr(start, end - start));
        start = end + 1;
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> words(std::string_view s) {
    std::vector<std::string_view> out;
    for (auto w : split(s, ' ')) {
        w = trim(w);
        if (!w.empty()) {
            out.push_back(w);
        }
    }
    return out;
}

int parse_int(std::string_view s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw std::invalid_argument("expected an integer, got '" + std::string(s) + "'");
    }
    return v;
}

}  // namespace

Support support(const Operation &op) {
    Support s;
    auto one = [&](int q) {
        s.count = 1;
        s.qubits[0] = q;
    };
    auto two = [&](int a, int b) {
        s.count = 2;
        s.qubits[0] = a;
        s.qubits[1] = b;
    };
    std::visit(overloaded{
                   [&](const Entangle &e) { two(e.a, e.b); },
                   [&](const Gate1 &g) { one(g.q); },
                   [&](const Gate2 &g) { two(g.a, g.b); },
                   [&](const Measure &m) { one(m.q); },
                   [&](const MeasurePair &m) { two(m.a, m.b); },
                   [&](const Byproduct &b) { one(b.q); },
               },
               op);
    return s;
}

std::vector<ResourcePair> Circuit::resource_pairs() const {
    std::vector<ResourcePair> out;
    for (const auto &step : steps) {
        for (const auto &op : step.ops) {
            if (const auto *e = std::get_if<Entangle>(&op)) {
                out.push_back({e->a, e->b, e->kind});
            }
        }
    }
    return out;
}

int Circuit::label_index(std::string_view name) const {
    for (size_t k = 0; k < labels.size(); k++) {
        if (labels[k] == name) {
            return static_cast<int>(k);
        }
    }
    return -1;
}

std::vector<Violation> validate(const Circuit &c) {
    std::vector<Violation> out;
    auto fail = [&](int step, std::string msg) { out.push_back({step, std::move(msg)}); };

    if (c.qubit_count < 0 || c.qubit_count > PauliFrame::kMaxQubits) {
        fail(-1, "qubit count " + std::to_string(c.qubit_count) + " outside 0.." +
                     std::to_string(PauliFrame::kMaxQubits));
        return out;
    }
    if (c.labels.size() > static_cast<size_t>(kMaxLabels)) {
        fail(-1, "more than " + std::to_string(kMaxLabels) + " outcome labels");
        return out;
    }

    const int n = c.qubit_count;
    std::vector<int> measured_at(static_cast<size_t>(n), -1);
    std::vector<int> covered(static_cast<size_t>(n), 0);
    std::vector<int> produced_at(c.labels.size(), -1);
    bool has_entangle = false;

    auto produce = [&](int step, int label) {
        if (label < 0 || static_cast<size_t>(label) >= c.labels.size()) {
            fail(step, "measurement writes unknown label " + std::to_string(label));
            return;
        }
        if (produced_at[static_cast<size_t>(label)] >= 0) {
            fail(step, "label " + c.labels[static_cast<size_t>(label)] + " produced twice");
            return;
        }
        produced_at[static_cast<size_t>(label)] = step;
    };

    for (size_t s = 0; s < c.steps.size(); s++) {
        const int step = static_cast<int>(s);
        uint64_t busy = 0;
        for (const auto &op : c.steps[s].ops) {
            Support sup = support(op);
            bool in_range = true;
            for (int q : sup) {
                if (q < 0 || q >= n) {
                    fail(step, "qubit " + std::to_string(q) + " out of range");
                    in_range = false;
                }
            }
            if (!in_range) {
                continue;
            }
            if (sup.count == 2 && sup.qubits[0] == sup.qubits[1]) {
                fail(step, "two-qubit operation uses qubit " + std::to_string(sup.qubits[0]) + " twice");
                continue;
            }
            for (int q : sup) {
                uint64_t bit = uint64_t{1} << q;
                if (busy & bit) {
                    fail(step, "qubit " + std::to_string(q) + " used by two operations in one step");
                }
                busy |= bit;
                if (measured_at[static_cast<size_t>(q)] >= 0) {
                    fail(step, "qubit " + std::to_string(q) + " used after its measurement at step " +
                                   std::to_string(measured_at[static_cast<size_t>(q)]));
                }
            }

            if (const auto *e = std::get_if<Entangle>(&op)) {
                has_entangle = true;
                if (step != 0) {
                    fail(step, "resource preparation outside the initialization block");
                }
                covered[static_cast<size_t>(e->a)]++;
                covered[static_cast<size_t>(e->b)]++;
            } else if (step < kInitSteps) {
                fail(step, "protocol operation inside the initialization block");
            }
            if (const auto *m = std::get_if<Measure>(&op)) {
                produce(step, m->label);
            }
            if (const auto *m = std::get_if<MeasurePair>(&op)) {
                produce(step, m->label_a);
                produce(step, m->label_b);
            }
            if (const auto *b = std::get_if<Byproduct>(&op)) {
                if (b->pauli == Pauli::I) {
                    fail(step, "identity byproduct");
                }
                for (int k = 0; k < kMaxLabels; k++) {
                    if (!((b->condition >> k) & 1)) {
                        continue;
                    }
                    if (static_cast<size_t>(k) >= c.labels.size()) {
                        fail(step, "byproduct condition references unknown label " + std::to_string(k));
                        continue;
                    }
                    int at = produced_at[static_cast<size_t>(k)];
                    if (at < 0 || at >= step) {
                        fail(step, "byproduct conditioned on " + c.labels[static_cast<size_t>(k)] +
                                       " before its outcome is delivered (feedforward needs one step)");
                    }
                }
            }
        }
        // Measurements retire their qubits after the step completes.
        for (const auto &op : c.steps[s].ops) {
            if (std::holds_alternative<Measure>(op) || std::holds_alternative<MeasurePair>(op)) {
                for (int q : support(op)) {
                    if (q >= 0 && q < n && measured_at[static_cast<size_t>(q)] < 0) {
                        measured_at[static_cast<size_t>(q)] = step;
                    }
                }
            }
        }
    }

    for (size_t k = 0; k < c.labels.size(); k++) {
        if (produced_at[k] < 0) {
            fail(-1, "label " + c.labels[k] + " is never produced");
        }
    }
    if (has_entangle) {
        if (c.steps.size() < static_cast<size_t>(kInitSteps)) {
            fail(-1, "initialization block needs " + std::to_string(kInitSteps) + " steps");
        }
        for (int q = 0; q < n; q++) {
            if (covered[static_cast<size_t>(q)] != 1) {
                fail(0, "qubit " + std::to_string(q) + " belongs to " + std::to_string(covered[static_cast<size_t>(q)]) +
                            " resource pairs");
            }
        }
    }

    if (n > 0 || !c.outputs.empty()) {
        if (c.outputs.size() != 2) {
            fail(-1, "expected exactly two output pairs, got " + std::to_string(c.outputs.size()));
        }
        uint64_t used = 0;
        for (const auto &o : c.outputs) {
            for (int q : {o.a, o.b}) {
                if (q < 0 || q >= n) {
                    fail(-1, "output qubit " + std::to_string(q) + " out of range");
                    continue;
                }
                if (used & (uint64_t{1} << q)) {
                    fail(-1, "output pairs overlap on qubit " + std::to_string(q));
                }
                used |= uint64_t{1} << q;
                if (measured_at[static_cast<size_t>(q)] >= 0) {
                    fail(-1, "output qubit " + std::to_string(q) + " is measured");
                }
            }
        }
    }
    return out;
}

CircuitStats compute_stats(const Circuit &c) {
    CircuitStats s;
    s.qubits = c.qubit_count;
    s.depth = static_cast<int>(c.steps.size());
    for (const auto &step : c.steps) {
        for (const auto &op : step.ops) {
            std::visit(overloaded{
                           [&](const Entangle &) { s.entangling_ops++; },
                           [&](const Gate1 &) { s.single_qubit_gates++; },
                           [&](const Gate2 &) { s.two_qubit_gates++; },
                           [&](const Measure &) { s.measurements++; },
                           [&](const MeasurePair &) { s.measurements++; },
                           [&](const Byproduct &) {
                               s.single_qubit_gates++;
                               s.byproduct_count++;
                           },
                       },
                       op);
        }
    }
    s.kq = s.qubits * s.depth;
    return s;
}

double depth_reduction(const CircuitStats &a, const CircuitStats &b) {
    if (b.depth <= 0) {
        throw std::invalid_argument("depth_reduction: reference circuit has zero depth");
    }
    return static_cast<double>(b.depth - a.depth) / static_cast<double>(b.depth);
}

Circuit reschedule_asap(const Circuit &c) {
    Circuit out = c;
    out.steps.clear();
    std::vector<int> last_use(static_cast<size_t>(c.qubit_count), -1);
    std::vector<int> produced_at(c.labels.size(), -1);
    auto place = [&](int step, const Operation &op) {
        while (out.steps.size() <= static_cast<size_t>(step)) {
            out.steps.emplace_back();
        }
        out.steps[static_cast<size_t>(step)].ops.push_back(op);
        for (int q : support(op)) {
            last_use[static_cast<size_t>(q)] = step;
        }
    };
    for (size_t s = 0; s < c.steps.size(); s++) {
        for (const auto &op : c.steps[s].ops) {
            if (s < static_cast<size_t>(kInitSteps)) {
                place(static_cast<int>(s), op);
                continue;
            }
            int earliest = kInitSteps;
            for (int q : support(op)) {
                earliest = std::max(earliest, last_use[static_cast<size_t>(q)] + 1);
            }
            if (const auto *b = std::get_if<Byproduct>(&op)) {
                for (int k = 0; k < kMaxLabels; k++) {
                    if ((b->condition >> k) & 1) {
                        earliest = std::max(earliest, produced_at[static_cast<size_t>(k)] + 1);
                    }
                }
            }
            place(earliest, op);
            if (const auto *m = std::get_if<Measure>(&op)) {
                produced_at[static_cast<size_t>(m->label)] = earliest;
            }
            if (const auto *m = std::get_if<MeasurePair>(&op)) {
                produced_at[static_cast<size_t>(m->label_a)] = earliest;
                produced_at[static_cast<size_t>(m->label_b)] = earliest;
            }
        }
    }
    while (out.steps.size() < std::min(c.steps.size(), static_cast<size_t>(kInitSteps))) {
        out.steps.emplace_back();
    }
    return out;
}

std::string protocol_name(ProtocolId id) {
    switch (id) {
        case ProtocolId::MQNC:
            return "MQNC";
        case ProtocolId::QNC:
            return "QNC";
        case ProtocolId::ES:
            return "ES";
        case ProtocolId::ESP:
            return "ESP";
    }
    return "?";
}

ProtocolId parse_protocol(std::string_view name) {
    std::string up;
    for (char ch : name) {
        if (ch != '_') {
            up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
        }
    }
    if (up == "MQNC") return ProtocolId::MQNC;
    if (up == "QNC") return ProtocolId::QNC;
    if (up == "ES") return ProtocolId::ES;
    if (up == "ESP") return ProtocolId::ESP;
    throw std::invalid_argument("unknown protocol '" + std::string(name) + "' (expected MQNC, QNC, ES or ESP)");
}

std::string pair_kind_name(PairKind kind) { return kind == PairKind::BellPhiPlus ? "bell" : "cluster"; }

std::string format_operation(const Circuit &c, const Operation &op) {
    auto label = [&](int k) {
        return (k >= 0 && static_cast<size_t>(k) < c.labels.size()) ? c.labels[static_cast<size_t>(k)]
                                                                      : "?" + std::to_string(k);
    };
    std::ostringstream out;
    std::visit(overloaded{
                   [&](const Entangle &e) {
                       out << (e.kind == PairKind::BellPhiPlus ? "BELL " : "CLUSTER ") << e.a << ' ' << e.b;
                   },
                   [&](const Gate1 &g) { out << gate1_name(g.gate) << ' ' << g.q; },
                   [&](const Gate2 &g) { out << (g.gate == Gate2Kind::CZ ? "CZ " : "CNOT ") << g.a << ' ' << g.b; },
                   [&](const Measure &m) { out << 'M' << basis_char(m.basis) << ' ' << m.q << " -> " << label(m.label); },
                   [&](const MeasurePair &m) {
                       out << "MZZ " << m.a << ' ' << m.b << " -> " << label(m.label_a) << ' ' << label(m.label_b);
                   },
                   [&](const Byproduct &b) {
                       out << "BP " << pauli_char(b.pauli) << ' ' << b.q;
                       bool first = true;
                       for (int k = 0; k < kMaxLabels; k++) {
                           if ((b.condition >> k) & 1) {
                               out << (first ? " if " : "^") << label(k);
                               first = false;
                           }
                       }
                   },
               },
               op);
    return out.str();
}

std::string to_text(const Circuit &c) {
    std::ostringstream out;
    out << "protocol " << protocol_name(c.protocol) << '\n';
    out << "qubits " << c.qubit_count << '\n';
    for (const auto &o : c.outputs) {
        out << "output " << o.a << ' ' << o.b << ' ' << pair_kind_name(o.kind) << '\n';
    }
    for (const auto &step : c.steps) {
        out << "step";
        bool first = true;
        for (const auto &op : step.ops) {
            out << (first ? " " : "; ") << format_operation(c, op);
            first = false;
        }
        out << '\n';
    }
    return out.str();
}

Circuit parse_circuit(std::string_view text) {
    Circuit c;
    std::map<std::string, int, std::less<>> label_ids;
    int line_no = 0;
    auto error = [&](const std::string &msg) {
        return std::invalid_argument("circuit text line " + std::to_string(line_no) + ": " + msg);
    };
    auto kind_of = [&](std::string_view w) {
        if (w == "bell") return PairKind::BellPhiPlus;
        if (w == "cluster") return PairKind::TwoQubitCluster;
        throw error("unknown pair kind '" + std::string(w) + "'");
    };
    auto new_label = [&](std::string_view name) {
        std::string key(name);
        if (label_ids.count(key)) {
            throw error("label " + key + " defined twice");
        }
        int id = static_cast<int>(c.labels.size());
        c.labels.push_back(key);
        label_ids[key] = id;
        return id;
    };
    auto find_label = [&](std::string_view name) {
        auto it = label_ids.find(name);
        if (it == label_ids.end()) {
            throw error("unknown label '" + std::string(name) + "'");
        }
        return it->second;
    };

    for (auto raw_line : split(text, '\n')) {
        line_no++;
        auto line = trim(raw_line);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        auto w = words(line);
        if (w[0] == "protocol" && w.size() == 2) {
            c.protocol = parse_protocol(w[1]);
        } else if (w[0] == "qubits" && w.size() == 2) {
            c.qubit_count = parse_int(w[1]);
        } else if (w[0] == "output" && w.size() == 4) {
            c.outputs.push_back({parse_int(w[1]), parse_int(w[2]), kind_of(w[3])});
        } else if (w[0] == "step") {
            TimeStep step;
            auto body = trim(line.substr(4));
            if (!body.empty()) {
                for (auto part : split(body, ';')) {
                    auto t = words(part);
                    if (t.empty()) {
                        continue;
                    }
                    const auto &op = t[0];
                    if ((op == "BELL" || op == "CLUSTER") && t.size() == 3) {
                        step.ops.emplace_back(Entangle{op == "BELL" ? PairKind::BellPhiPlus : PairKind::TwoQubitCluster,
                                                       parse_int(t[1]), parse_int(t[2])});
                    } else if ((op == "CZ" || op == "CNOT") && t.size() == 3) {
                        step.ops.emplace_back(
                            Gate2{op == "CZ" ? Gate2Kind::CZ : Gate2Kind::CNOT, parse_int(t[1]), parse_int(t[2])});
                    } else if (op.size() == 1 && std::string_view("HSXYZ").find(op[0]) != std::string_view::npos &&
                               t.size() == 2) {
                        static const std::map<char, Gate1Kind> kinds{{'H', Gate1Kind::H}, {'S', Gate1Kind::S},
                                                                     {'X', Gate1Kind::X}, {'Y', Gate1Kind::Y},
                                                                     {'Z', Gate1Kind::Z}};
                        step.ops.emplace_back(Gate1{kinds.at(op[0]), parse_int(t[1])});
                    } else if ((op == "MX" || op == "MY" || op == "MZ") && t.size() == 4 && t[2] == "->") {
                        Basis b = op[1] == 'X' ? Basis::X : (op[1] == 'Y' ? Basis::Y : Basis::Z);
                        int q = parse_int(t[1]);
                        step.ops.emplace_back(Measure{b, q, new_label(t[3])});
                    } else if (op == "MZZ" && t.size() == 6 && t[3] == "->") {
                        int a = parse_int(t[1]);
                        int b = parse_int(t[2]);
                        int la = new_label(t[4]);
                        int lb = new_label(t[5]);
                        step.ops.emplace_back(MeasurePair{a, b, la, lb});
                    } else if (op == "BP" && (t.size() == 3 || (t.size() == 5 && t[3] == "if"))) {
                        if (t[1].size() != 1) {
                            throw error("bad byproduct Pauli '" + std::string(t[1]) + "'");
                        }
                        uint64_t cond = 0;
                        if (t.size() == 5) {
                            for (auto name : split(t[4], '^')) {
                                cond ^= uint64_t{1} << find_label(name);
                            }
                        }
                        step.ops.emplace_back(Byproduct{parse_pauli(t[1][0]), parse_int(t[2]), cond});
                    } else {
                        throw error("cannot parse operation '" + std::string(trim(part)) + "'");
                    }
                }
            }
            c.steps.push_back(std::move(step));
        } else {
            throw error("unrecognized line '" + std::string(line) + "'");
        }
    }
    return c;
}

}  // namespace mqnc
