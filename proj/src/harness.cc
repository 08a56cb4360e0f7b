#include "exft/harness.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

namespace exft {

std::string to_string(Granularity g) {
    switch (g) {
        case Granularity::PerPulse: return "per-pulse";
        case Granularity::PerGate: return "per-gate";
        case Granularity::PerIdle: return "per-idle-interval";
    }
    return "?";
}

Granularity parse_granularity(const std::string& s) {
    if (s == "per-pulse" || s == "pulse") return Granularity::PerPulse;
    if (s == "per-gate" || s == "gate") return Granularity::PerGate;
    if (s == "per-idle-interval" || s == "per-idle" || s == "idle") return Granularity::PerIdle;
    throw std::invalid_argument("unknown granularity '" + s + "'");
}

ErrorChannel ErrorChannel::parse(const std::string& triple, Granularity g) {
    std::vector<double> v;
    std::stringstream ss(triple);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t used = 0;
        const double x = std::stod(item, &used);
        if (item.find_first_not_of(" \t", used) != std::string::npos) {
            throw std::invalid_argument("bad channel entry '" + item + "'");
        }
        v.push_back(x);
    }
    if (v.size() != 3) throw std::invalid_argument("channel must be px,py,pz");
    ErrorChannel c{{v[0], v[1], v[2]}, g};
    c.rates.validate();
    return c;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Clean: return "clean";
        case Verdict::Corrected: return "corrected";
        case Verdict::LogicalFailure: return "logical-failure";
        case Verdict::LeakageFailure: return "leakage-failure";
    }
    return "?";
}

std::string to_string(HybridGate g) { return g == HybridGate::Idle ? "idle" : "logical-x"; }

HybridGate parse_hybrid_gate(const std::string& s) {
    if (s == "idle") return HybridGate::Idle;
    if (s == "logical-x") return HybridGate::LogicalX;
    throw std::invalid_argument("unknown hybrid gate '" + s + "' (expected idle or logical-x)");
}

std::string to_string(InputState s) {
    switch (s) {
        case InputState::Zero: return "zero";
        case InputState::One: return "one";
        case InputState::Plus: return "plus";
        case InputState::Random: return "random";
    }
    return "?";
}

InputState parse_input_state(const std::string& s) {
    if (s == "zero") return InputState::Zero;
    if (s == "one") return InputState::One;
    if (s == "plus") return InputState::Plus;
    if (s == "random") return InputState::Random;
    throw std::invalid_argument("unknown input state '" + s + "'");
}

PulseSequence hybrid_gate_sequence(const HybridCode& code, HybridGate gate, const Device& device) {
    using std::numbers::pi;
    PulseSequence seq(to_string(gate));
    seq.set_model(to_string(device.model));
    if (gate == HybridGate::Idle) return seq;
    for (int b = 1; b <= code.num_blocks(); ++b) {
        const BlockQubits blk{2 * b - 1, 2 * b};
        const std::string name = "block-" + std::to_string(b);
        switch (code.base.logical_x.letter(b)) {
            case 'I': break;
            case 'X': seq.append(xbar_rotation(blk.first, blk.second, pi / 2.0, device, {}, true), name); break;
            case 'Y': seq.append(ybar_rotation(blk, pi / 2.0, device), name); break;
            case 'Z': seq.append(zbar_rotation(blk.first, blk.second, pi / 2.0, device), name); break;
        }
    }
    return seq;
}

namespace {

struct Prepared {
    Device device;
    PulseSequence gate;
    BlockLayout full;
};

Prepared prepare(const RoundSetup& s) {
    const int n = s.code.num_qubits();
    Device device = Device::uniform(s.model, n + 2);
    PulseSequence gate = hybrid_gate_sequence(s.code, s.gate, device);
    return Prepared{std::move(device), std::move(gate), BlockLayout(s.code.num_blocks() + 1)};
}

StateVector input_state(const RoundSetup& s, Rng& rng) {
    switch (s.input) {
        case InputState::Zero: return s.code.zero;
        case InputState::One: return s.code.one;
        case InputState::Plus: return s.code.codeword(1.0, 1.0);
        case InputState::Random: {
            const double theta = std::acos(1.0 - 2.0 * uniform01(rng));
            const double phi = 2.0 * std::numbers::pi * uniform01(rng);
            return s.code.codeword(std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), phi));
        }
    }
    return s.code.zero;
}

void inject(StateVector& state, TrialRecord& rec, int q, char letter, int location) {
    state.apply_pauli(letter, q);
    rec.events.push_back(ErrorEvent{q, letter, location});
}

void sample_at(StateVector& state, TrialRecord& rec, const PauliRates& rates, Rng& rng, int q, int location) {
    const char c = sample_pauli(rates, rng);
    if (c != 'I') inject(state, rec, q, c, location);
}

TrialRecord run_prepared(const RoundSetup& s, const Prepared& prep, uint64_t trial, uint64_t master_seed) {
    TrialRecord rec;
    rec.trial = trial;
    rec.seed = split_seed(master_seed, trial);
    Rng rng(rec.seed);

    const int n = s.code.num_qubits();
    const StateVector input = input_state(s, rng);
    StateVector ideal = input;
    if (s.gate == HybridGate::LogicalX) s.code.logical_x.apply(ideal);

    Vector amps = Vector::Zero(Eigen::Index{1} << (n + 2));
    for (uint64_t d = 0; d < input.dim(); ++d) amps[static_cast<Eigen::Index>((d << 2) | kZeroL)] = input[d];
    StateVector state(n + 2, std::move(amps));

    const auto& pulses = prep.gate.pulses();
    const int count = static_cast<int>(pulses.size());
    const auto& rates = s.channel.rates;
    auto forced_at = [&](int location) {
        for (const auto& e : *s.forced_faults) {
            if (e.location == location) inject(state, rec, e.qubit, e.letter, location);
        }
    };

    if (s.forced_faults) forced_at(0);
    if (!s.forced_faults && count == 0) {
        for (int q = 1; q <= n; ++q) sample_at(state, rec, rates, rng, q, 0);
    }
    for (int k = 0; k < count; ++k) {
        apply_pulse(pulses[static_cast<size_t>(k)], prep.device, state);
        if (s.forced_faults) {
            forced_at(k + 1);
            continue;
        }
        const auto support = pulse_support(pulses[static_cast<size_t>(k)], n + 2);
        for (int q = 1; q <= n; ++q) {
            const bool touched = std::find(support.begin(), support.end(), q) != support.end();
            const bool location = (s.channel.granularity == Granularity::PerPulse && touched) ||
                                  (s.channel.granularity == Granularity::PerIdle && !touched) ||
                                  (s.channel.granularity == Granularity::PerGate && k == count - 1);
            if (location) sample_at(state, rec, rates, rng, q, k + 1);
        }
    }

    if (s.lcu) {
        for (int b = 1; b <= s.code.num_blocks(); ++b) {
            rec.lcu.push_back(lcu_round_ideal(state, prep.full, b, s.code.num_blocks() + 1, rng));
        }
    }

    // The ancilla block is back in |0_L> (or was never touched); keep the data factor.
    Vector data(static_cast<Eigen::Index>(input.dim()));
    for (uint64_t d = 0; d < input.dim(); ++d) {
        data[static_cast<Eigen::Index>(d)] = state[(d << 2) | kZeroL];
    }
    if (std::abs(data.norm() - 1.0) > kTol.leakage) {
        throw std::logic_error("ancilla block not in |0_L> after the round");
    }
    StateVector out(n, std::move(data));

    const bool had_events = !rec.events.empty();
    if (leakage_weight(out, s.code.layout) > kTol.leakage) {
        rec.fidelity = fidelity(out, ideal);
        rec.verdict = Verdict::LeakageFailure;
        if (s.keep_state) rec.final_state = out;
        return rec;
    }
    rec.syndrome = extract_syndrome(out, s.code, &rng);
    correct(out, rec.syndrome, s.code);
    if (std::abs(out.norm() - 1.0) > kTol.leakage) throw std::logic_error("state norm not conserved");
    rec.fidelity = fidelity(out, ideal);
    if (rec.fidelity >= 1.0 - kTol.fidelity) {
        rec.verdict = had_events ? Verdict::Corrected : Verdict::Clean;
    } else {
        rec.verdict = Verdict::LogicalFailure;
    }
    if (s.keep_state) rec.final_state = out;
    return rec;
}

unsigned thread_count(unsigned requested, long work) {
    unsigned t = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<long>(t, std::max<long>(1, work)));
}

}  // namespace

TrialRecord run_ft_round(const RoundSetup& setup, uint64_t trial, uint64_t master_seed) {
    return run_prepared(setup, prepare(setup), trial, master_seed);
}

std::vector<TrialRecord> run_trials(const RoundSetup& setup, long trials, uint64_t master_seed, unsigned threads) {
    setup.channel.rates.validate();
    const Prepared prep = prepare(setup);
    std::vector<TrialRecord> out(static_cast<size_t>(std::max<long>(0, trials)));
    const unsigned t = thread_count(threads, trials);
    std::vector<std::exception_ptr> errors(t);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < t; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (long i = w; i < trials; i += t) {
                    out[static_cast<size_t>(i)] = run_prepared(setup, prep, static_cast<uint64_t>(i), master_seed);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

Interval wilson_interval(long successes, long trials, double z) {
    if (trials <= 0) return {0.0, 1.0};
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double denom = 1.0 + z * z / n;
    const double center = (p + z * z / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::vector<SweepRow> sweep(const RoundSetup& base, const std::vector<PauliRates>& grid, const std::vector<bool>& lcu,
                            long trials, uint64_t master_seed, unsigned threads) {
    std::vector<SweepRow> rows;
    for (const auto& rates : grid) {
        for (bool policy : lcu) {
            RoundSetup s = base;
            s.channel.rates = rates;
            s.lcu = policy;
            SweepRow row;
            row.rates = rates;
            row.lcu = policy;
            row.trials = trials;
            for (const auto& r : run_trials(s, trials, master_seed, threads)) {
                switch (r.verdict) {
                    case Verdict::Clean: ++row.clean; break;
                    case Verdict::Corrected: ++row.corrected; break;
                    case Verdict::LogicalFailure: ++row.logical_failures; break;
                    case Verdict::LeakageFailure: ++row.leakage_failures; break;
                }
            }
            const long failures = row.logical_failures + row.leakage_failures;
            row.failure_rate = trials > 0 ? static_cast<double>(failures) / static_cast<double>(trials) : 0.0;
            const auto ci = wilson_interval(failures, trials);
            row.wilson_low = ci.low;
            row.wilson_high = ci.high;
            rows.push_back(row);
        }
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out =
        "px,py,pz,lcu,trials,clean,corrected,logical_failures,leakage_failures,failure_rate,wilson_low,wilson_high\n";
    for (const auto& r : rows) {
        out += fmt::format("{},{},{},{},{},{},{},{},{},{:.6g},{:.6g},{:.6g}\n", r.rates.px, r.rates.py, r.rates.pz,
                           r.lcu ? "on" : "off", r.trials, r.clean, r.corrected, r.logical_failures,
                           r.leakage_failures, r.failure_rate, r.wilson_low, r.wilson_high);
    }
    return out;
}

std::vector<int> operator_support(const Matrix& m, int n_qubits, double tol) {
    std::vector<int> out;
    const Eigen::Index d = m.rows();
    for (int q = 1; q <= n_qubits; ++q) {
        const Eigen::Index bit = Eigen::Index{1} << bit_of(q, n_qubits);
        bool nontrivial = false;
        for (Eigen::Index i = 0; i < d && !nontrivial; ++i) {
            for (Eigen::Index j = 0; j < d; ++j) {
                // Commutators with Z_q and X_q.
                if (((i ^ j) & bit) && std::abs(m(i, j)) > tol) {
                    nontrivial = true;
                    break;
                }
                if (std::abs(m(i ^ bit, j ^ bit) - m(i, j)) > tol) {
                    nontrivial = true;
                    break;
                }
            }
        }
        if (nontrivial) out.push_back(q);
    }
    return out;
}

TransversalityReport transversality_check(const std::string& name, const Matrix& gate, int codewords, int blocks) {
    const int n = codewords * blocks;
    if (gate.rows() != (Eigen::Index{1} << n)) throw std::invalid_argument("gate dimension does not match the blocks");
    TransversalityReport rep;
    rep.gate = name;
    for (int q = 1; q <= n; ++q) {
        for (char l : std::string("XYZ")) {
            const PauliString e = PauliString::single(n, q, l);
            const Matrix image = gate * e.matrix() * gate.adjoint();
            TransversalityEntry entry;
            entry.error = e.letters();
            entry.image_support = operator_support(image, n);
            entry.blocks_per_codeword.assign(static_cast<size_t>(codewords), 0);
            for (int s : entry.image_support) ++entry.blocks_per_codeword[static_cast<size_t>((s - 1) / blocks)];
            entry.spreads = std::any_of(entry.blocks_per_codeword.begin(), entry.blocks_per_codeword.end(),
                                        [](int c) { return c > 1; });
            if (entry.spreads) rep.transversal = false;
            rep.entries.push_back(std::move(entry));
        }
    }
    return rep;
}

namespace {

Matrix cnot_network(int n, const std::vector<std::pair<int, int>>& pairs) {
    const Eigen::Index d = Eigen::Index{1} << n;
    Matrix u = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        uint64_t j = static_cast<uint64_t>(i);
        for (const auto& [c, t] : pairs) {
            if (qubit_is_one(j, c, n)) j ^= uint64_t{1} << bit_of(t, n);
        }
        u(static_cast<Eigen::Index>(j), i) = 1.0;
    }
    return u;
}

}  // namespace

Matrix transversal_cnot(int blocks) {
    std::vector<std::pair<int, int>> pairs;
    for (int b = 1; b <= blocks; ++b) pairs.emplace_back(b, blocks + b);
    return cnot_network(2 * blocks, pairs);
}

Matrix nontransversal_cnot(int blocks) { return cnot_network(2 * blocks, {{1, 2}}); }

}  // namespace exft
