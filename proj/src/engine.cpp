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

#include "mqnc/engine.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "mqnc/protocols.hpp"

namespace mqnc {

void TerminationRule::validate() const {
    if (max_errors == 0 || max_trials == 0) {
        throw std::invalid_argument("termination rule needs positive max_errors and max_trials");
    }
}

FrameSimulator::FrameSimulator(const Circuit &circuit) : circuit_(circuit) {
    auto violations = validate(circuit);
    if (!violations.empty()) {
        throw std::invalid_argument("circuit does not validate: " + violations.front().message);
    }
    if (circuit.outputs.size() != 2) {
        throw std::invalid_argument("frame simulator needs exactly two output pairs");
    }
    pairs_ = circuit.resource_pairs();
    for (size_t k = 0; k < 2; k++) {
        auto o = circuit.outputs[k];
        if (o.a > o.b) {
            std::swap(o.a, o.b);
        }
        outputs_[k] = o;
        fold_[k] = &fold_table(o.kind);
    }

    uint32_t live = circuit.qubit_count == 32 ? ~uint32_t{0} : ((uint32_t{1} << circuit.qubit_count) - 1);
    for (size_t s = 0; s < circuit.steps.size(); s++) {
        Step st{static_cast<uint32_t>(instrs_.size()), 0, 0, live};
        uint32_t touched = 0;
        uint32_t measured = 0;
        for (const auto &op : circuit.steps[s].ops) {
            for (int q : support(op)) {
                touched |= uint32_t{1} << q;
            }
            Instr in{};
            auto u8 = [](int v) { return static_cast<uint8_t>(v); };
            if (const auto *g = std::get_if<Gate1>(&op)) {
                in.a = u8(g->q);
                if (g->gate == Gate1Kind::H) {
                    in.kind = Kind::H;
                } else if (g->gate == Gate1Kind::S) {
                    in.kind = Kind::S;
                } else {
                    in.kind = Kind::Pauli1;
                }
            } else if (const auto *g2 = std::get_if<Gate2>(&op)) {
                in.kind = g2->gate == Gate2Kind::CZ ? Kind::CZ : Kind::CNOT;
                in.a = u8(g2->a);
                in.b = u8(g2->b);
            } else if (const auto *m = std::get_if<Measure>(&op)) {
                in.kind = Kind::Measure;
                in.a = u8(m->q);
                in.arg = static_cast<uint8_t>(m->basis);
                in.label_a = u8(m->label);
                measured |= uint32_t{1} << m->q;
            } else if (const auto *mp = std::get_if<MeasurePair>(&op)) {
                in.kind = Kind::MeasurePair;
                in.a = u8(mp->a);
                in.b = u8(mp->b);
                in.label_a = u8(mp->label_a);
                in.label_b = u8(mp->label_b);
                measured |= (uint32_t{1} << mp->a) | (uint32_t{1} << mp->b);
            } else if (const auto *bp = std::get_if<Byproduct>(&op)) {
                in.kind = Kind::Byproduct;
                in.a = u8(bp->q);
                in.arg = static_cast<uint8_t>(bp->pauli);
                in.condition = bp->condition;
            } else {
                continue;  // link preparation is covered by the input error
            }
            instrs_.push_back(in);
        }
        st.end = static_cast<uint32_t>(instrs_.size());
        st.idle = live & ~touched;
        steps_.push_back(st);
        live &= ~measured;
    }
}

namespace {

inline void apply_bits(uint32_t &x, uint32_t &z, int q, Pauli p) {
    x ^= uint32_t{x_bit(p)} << q;
    z ^= uint32_t{z_bit(p)} << q;
}

inline uint8_t pair_index(uint32_t x, uint32_t z, int a, int b) {
    // lex rank from (x, z): I=0, X=1, Y=2, Z=3
    constexpr uint8_t rank[4] = {0, 1, 3, 2};
    uint32_t pa = ((x >> a) & 1) | (((z >> a) & 1) << 1);
    uint32_t pb = ((x >> b) & 1) | (((z >> b) & 1) << 1);
    return static_cast<uint8_t>(4 * rank[pa] + rank[pb]);
}

}  // namespace

template <bool kInject>
uint8_t FrameSimulator::simulate(const NoiseModel *model, TrialRng *rng,
                                 const std::vector<Injection> *injections) const {
    uint32_t x = 0;
    uint32_t z = 0;
    uint64_t flips = 0;
    uint64_t ideal = 0;

    bool noisy = model != nullptr;
    bool gate1_noise = noisy && model->p_gate1 > 0;
    bool gate2_noise = noisy && model->p_gate2 > 0;
    bool meas_noise = noisy && model->p_meas > 0;
    bool mem_noise = noisy && !model->memory_ideal && model->p_mem > 0;
    bool need_ideal = gate1_noise && !model->charge_byproducts_always;

    if (noisy && model->p_init > 0) {
        for (const auto &pair : pairs_) {
            PauliPair e = sample_initial(pair, *model, *rng);
            apply_bits(x, z, std::min(pair.a, pair.b), e.first);
            apply_bits(x, z, std::max(pair.a, pair.b), e.second);
        }
    }

    auto inject = [&](size_t step) {
        if constexpr (kInject) {
            for (const auto &inj : *injections) {
                if (inj.step == static_cast<int>(step)) {
                    apply_bits(x, z, inj.qubit, inj.pauli);
                }
            }
        }
    };
    auto noise1 = [&](int q) {
        if (gate1_noise) {
            apply_bits(x, z, q, sample_gate1(*model, *rng));
        }
    };

    for (size_t s = static_cast<size_t>(kInitSteps); s < steps_.size(); s++) {
        const Step &st = steps_[s];
        inject(s);
        if (mem_noise) {
            for (uint32_t idle = model->memory_on_active ? st.live : st.idle; idle; idle &= idle - 1) {
                apply_bits(x, z, std::countr_zero(idle), sample_memory(*model, *rng));
            }
        }
        for (uint32_t i = st.begin; i < st.end; i++) {
            const Instr &in = instrs_[i];
            const int a = in.a;
            const int b = in.b;
            switch (in.kind) {
                case Kind::H: {
                    uint32_t d = ((x >> a) ^ (z >> a)) & 1;
                    x ^= d << a;
                    z ^= d << a;
                    noise1(a);
                    break;
                }
                case Kind::S:
                    z ^= x & (uint32_t{1} << a);
                    noise1(a);
                    break;
                case Kind::Pauli1:
                    noise1(a);
                    break;
                case Kind::CZ: {
                    uint32_t xa = (x >> a) & 1;
                    uint32_t xb = (x >> b) & 1;
                    z ^= (xa << b) | (xb << a);
                    if (gate2_noise) {
                        PauliPair e = sample_gate2(*model, *rng);
                        apply_bits(x, z, a, e.first);
                        apply_bits(x, z, b, e.second);
                    }
                    break;
                }
                case Kind::CNOT: {
                    x ^= ((x >> a) & 1) << b;
                    z ^= ((z >> b) & 1) << a;
                    if (gate2_noise) {
                        PauliPair e = sample_gate2(*model, *rng);
                        apply_bits(x, z, a, e.first);
                        apply_bits(x, z, b, e.second);
                    }
                    break;
                }
                case Kind::Measure: {
                    if (meas_noise) {
                        apply_bits(x, z, a, sample_measurement(*model, *rng));
                    }
                    uint32_t flip;
                    switch (static_cast<Basis>(in.arg)) {
                        case Basis::X:
                            flip = (z >> a) & 1;
                            break;
                        case Basis::Y:
                            flip = ((x ^ z) >> a) & 1;
                            break;
                        default:
                            flip = (x >> a) & 1;
                            break;
                    }
                    flips |= uint64_t{flip} << in.label_a;
                    if (need_ideal) {
                        ideal |= ((*rng)() & 1) << in.label_a;
                    }
                    break;
                }
                case Kind::MeasurePair: {
                    if (meas_noise) {
                        apply_bits(x, z, a, sample_measurement(*model, *rng));
                        apply_bits(x, z, b, sample_measurement(*model, *rng));
                    }
                    flips |= uint64_t{(x >> a) & 1} << in.label_a;
                    flips |= uint64_t{(x >> b) & 1} << in.label_b;
                    if (need_ideal) {
                        uint64_t r = (*rng)();
                        ideal |= (r & 1) << in.label_a;
                        ideal |= ((r >> 1) & 1) << in.label_b;
                    }
                    break;
                }
                case Kind::Byproduct: {
                    const bool flipped = (std::popcount(in.condition & flips) & 1) != 0;
                    if (flipped) {
                        apply_bits(x, z, a, static_cast<Pauli>(in.arg));
                    }
                    if (gate1_noise) {
                        bool applied = in.condition == 0 || model->charge_byproducts_always ||
                                       (((std::popcount(in.condition & ideal) & 1) != 0) != flipped);
                        if (applied) {
                            noise1(a);
                        }
                    }
                    break;
                }
            }
        }
    }
    inject(steps_.size());

    uint8_t r0 = pair_index(x, z, outputs_[0].a, outputs_[0].b);
    uint8_t r1 = pair_index(x, z, outputs_[1].a, outputs_[1].b);
    return static_cast<uint8_t>(r0 | (r1 << 4));
}

TrialOutcome FrameSimulator::expand(uint8_t compact) const {
    TrialOutcome out;
    for (size_t k = 0; k < 2; k++) {
        int raw = (compact >> (4 * k)) & 15;
        out.raw[k] = PauliPair::from_index(raw);
        out.folded[k] = PauliPair::from_index((*fold_[k])[static_cast<size_t>(raw)]);
        out.any_error = out.any_error || !out.folded[k].is_identity();
    }
    return out;
}

uint8_t FrameSimulator::run_compact(const NoiseModel &model, TrialRng &rng) const {
    return simulate<false>(&model, &rng, nullptr);
}

TrialOutcome FrameSimulator::run_trial(const NoiseModel &model, TrialRng &rng) const {
    return expand(simulate<false>(&model, &rng, nullptr));
}

TrialOutcome FrameSimulator::run_injected(const std::vector<Injection> &injections) const {
    for (const auto &inj : injections) {
        if (inj.qubit < 0 || inj.qubit >= circuit_.qubit_count || inj.step < kInitSteps ||
            inj.step > static_cast<int>(steps_.size())) {
            throw std::out_of_range("injection outside the circuit");
        }
    }
    return expand(simulate<true>(nullptr, nullptr, &injections));
}

TrialOutcome run_trial(const Circuit &circuit, const NoiseModel &model, TrialRng &rng) {
    return FrameSimulator(circuit).run_trial(model, rng);
}

DataPoint run_datapoint(const FrameSimulator &sim, const NoiseModel &model, const TerminationRule &rule, uint64_t seed,
                        uint64_t point_key, int workers) {
    rule.validate();
    model.validate();
    if (workers <= 0) {
        workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    }

    constexpr uint64_t kBlock = 4096;
    DataPoint dp;
    dp.protocol = protocol_name(sim.circuit().protocol);
    for (const auto &o : sim.circuit().outputs) {
        dp.outputs.push_back({o, {}, {}});
    }
    std::array<const std::array<uint8_t, 16> *, 2> fold{&fold_table(sim.circuit().outputs[0].kind),
                                                         &fold_table(sim.circuit().outputs[1].kind)};
    std::array<std::array<uint64_t, 16>, 2> raw{};

    std::vector<uint8_t> buf;
    uint64_t next = 0;
    bool done = false;
    while (!done && next < rule.max_trials) {
        const uint64_t wave = kBlock * static_cast<uint64_t>(workers) * (workers > 1 ? 2 : 1);
        const uint64_t begin = next;
        const uint64_t end = std::min(rule.max_trials, begin + wave);
        buf.resize(end - begin);

        auto work = [&](uint64_t lo, uint64_t hi) {
            for (uint64_t t = lo; t < hi; t++) {
                TrialRng rng = TrialRng::for_trial(seed, point_key, t);
                buf[t - begin] = sim.run_compact(model, rng);
            }
        };
        if (workers == 1) {
            work(begin, end);
        } else {
            std::atomic<uint64_t> cursor{begin};
            std::vector<std::jthread> pool;
            for (int w = 0; w < workers; w++) {
                pool.emplace_back([&] {
                    while (true) {
                        uint64_t lo = cursor.fetch_add(kBlock);
                        if (lo >= end) {
                            return;
                        }
                        work(lo, std::min(end, lo + kBlock));
                    }
                });
            }
        }

        for (uint64_t t = begin; t < end; t++) {
            uint8_t c = buf[t - begin];
            size_t r0 = c & 15;
            size_t r1 = c >> 4;
            raw[0][r0]++;
            raw[1][r1]++;
            dp.trials++;
            if ((*fold[0])[r0] != 0 || (*fold[1])[r1] != 0) {
                dp.errors++;
                if (dp.errors >= rule.max_errors) {
                    done = true;
                    break;
                }
            }
        }
        next = end;
    }

    for (size_t k = 0; k < 2; k++) {
        for (size_t i = 0; i < 16; i++) {
            dp.outputs[k].raw.counts[i] = raw[k][i];
            dp.outputs[k].folded.counts[(*fold[k])[i]] += raw[k][i];
        }
    }
    dp.fidelity = joint_fidelity(dp);
    auto [lo, hi] = wilson_interval(dp.trials - dp.errors, dp.trials);
    dp.ci_low = lo;
    dp.ci_high = hi;
    return dp;
}

DataPoint run_datapoint(const Circuit &circuit, const NoiseModel &model, const TerminationRule &rule, uint64_t seed,
                        uint64_t point_key, int workers) {
    return run_datapoint(FrameSimulator(circuit), model, rule, seed, point_key, workers);
}

std::string sweep_variable_name(SweepVariable v) {
    switch (v) {
        case SweepVariable::FInput:
            return "F_input";
        case SweepVariable::FOperation:
            return "F_operation";
        case SweepVariable::FMemory:
            return "F_memory";
    }
    return "?";
}

SweepVariable parse_sweep_variable(std::string_view name) {
    std::string s;
    for (char c : name) {
        if (c != '_') {
            s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    if (s == "finput" || s == "input") return SweepVariable::FInput;
    if (s == "foperation" || s == "operation" || s == "fop") return SweepVariable::FOperation;
    if (s == "fmemory" || s == "memory" || s == "fmem") return SweepVariable::FMemory;
    throw std::invalid_argument("unknown sweep variable '" + std::string(name) + "'");
}

namespace {

double snap(double v) { return std::round(v * 1e12) / 1e12; }

double probability(double fidelity) { return std::clamp(snap(1.0 - fidelity), 0.0, 1.0); }

}  // namespace

void SweepSpec::validate() const {
    auto fraction = [](const char *name, double v) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::invalid_argument(std::string(name) + " must be a fraction in [0, 1]");
        }
    };
    if (protocols.empty()) {
        throw std::invalid_argument("sweep has no protocols");
    }
    if (!(step > 0)) {
        throw std::invalid_argument("sweep step must be positive");
    }
    fraction("start", start);
    fraction("stop", stop);
    if (start > stop) {
        throw std::invalid_argument("sweep start exceeds stop");
    }
    if (f_input) fraction("F_input", *f_input);
    if (f_operation) fraction("F_operation", *f_operation);
    if (f_memory) fraction("F_memory", *f_memory);
    if ((variable == SweepVariable::FInput && f_input) || (variable == SweepVariable::FOperation && f_operation) ||
        (variable == SweepVariable::FMemory && f_memory)) {
        throw std::invalid_argument("the swept knob " + sweep_variable_name(variable) + " also has a fixed value");
    }
    if (memory_ideal && (variable == SweepVariable::FMemory || f_memory)) {
        throw std::invalid_argument("ideal memory conflicts with a memory fidelity setting");
    }
    rule.validate();
}

std::vector<double> SweepSpec::coordinates() const {
    const auto n = static_cast<size_t>(std::llround((stop - start) / step)) + 1;
    std::vector<double> out;
    out.reserve(n);
    for (size_t i = 0; i < n; i++) {
        out.push_back(std::min(stop, snap(start + static_cast<double>(i) * step)));
    }
    return out;
}

NoiseModel SweepSpec::model_at(double c) const {
    const double f_in = variable == SweepVariable::FInput ? c : f_input.value_or(1.0);
    const double f_op = variable == SweepVariable::FOperation ? c : f_operation.value_or(1.0);
    NoiseModel m;
    m.init_bias = bias;
    m.p_init = probability(f_in);
    m.p_gate1 = m.p_gate2 = m.p_meas = probability(f_op);
    m.charge_byproducts_always = charge_byproducts_always;
    m.memory_on_active = memory_on_active;
    if (memory_ideal) {
        m.memory_ideal = true;
        m.p_mem = 0;
    } else if (variable == SweepVariable::FMemory) {
        m.p_mem = probability(c);
    } else if (f_memory) {
        m.p_mem = probability(*f_memory);
    } else {
        m.p_mem = probability(f_op);
    }
    return m;
}

std::vector<Series> run_sweep(const SweepSpec &spec, int workers, const ProgressFn &progress) {
    spec.validate();
    const auto coords = spec.coordinates();
    std::vector<Series> out;
    for (auto id : spec.protocols) {
        FrameSimulator sim(build_protocol(id));
        Series series{protocol_name(id), {}};
        for (size_t i = 0; i < coords.size(); i++) {
            const uint64_t key = (uint64_t{static_cast<uint8_t>(id)} << 32) | i;
            DataPoint dp = run_datapoint(sim, spec.model_at(coords[i]), spec.rule, spec.seed, key, workers);
            dp.coordinate = coords[i];
            if (progress) {
                progress(series.protocol, i, coords.size(), dp);
            }
            series.points.push_back(std::move(dp));
        }
        out.push_back(std::move(series));
    }
    return out;
}

}  // namespace mqnc
