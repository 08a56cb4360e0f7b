#include "exft/lcu.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace exft {

using std::numbers::pi;

namespace {

Matrix zz_pair(int a, int b) { return generators::zz(a, b, 4); }

}  // namespace

Matrix build_sqrt_swap() {
    return expm_hermitian(Matrix(generators::xbar(1, 3, 4) + generators::xbar(2, 4, 4)), pi / 4.0);
}

Matrix build_sqrt_swap_prime() {
    const Matrix g = generators::xbar(1, 3, 4) * zz_pair(2, 4) + generators::xbar(2, 4, 4) * zz_pair(1, 3);
    return expm_hermitian(g, pi / 4.0);
}

UnitaryMatrix build_l_ideal() { return UnitaryMatrix(4, build_sqrt_swap() * build_sqrt_swap_prime()); }

LcuActionCheck check_action_table(const Matrix& l, double tol) {
    if (l.rows() != 16 || l.cols() != 16) throw std::invalid_argument("LCU action table needs a 16x16 operator");
    const std::array<std::pair<const char*, const char*>, 4> table{{
        {"0101", "0101"},
        {"1001", "1001"},
        {"0001", "0100"},
        {"1101", "0111"},
    }};
    LcuActionCheck out;
    out.rows_map_correctly = true;
    for (size_t r = 0; r < table.size(); ++r) {
        const auto in = static_cast<Eigen::Index>(std::stoul(table[r].first, nullptr, 2));
        const auto ex = static_cast<Eigen::Index>(std::stoul(table[r].second, nullptr, 2));
        LcuRow row{table[r].first, table[r].second, l(ex, in), 0.0};
        row.leakage = std::sqrt(std::max(0.0, l.col(in).squaredNorm() - std::norm(row.amplitude)));
        if (std::abs(std::abs(row.amplitude) - 1.0) > tol || row.leakage > tol) out.rows_map_correctly = false;
        out.rows[r] = row;
    }
    for (const auto& row : out.rows) {
        const double d = std::abs(std::arg(row.amplitude / out.rows[0].amplitude));
        out.max_relative_phase = std::max(out.max_relative_phase, d);
    }
    out.common_phase = out.rows_map_correctly && out.max_relative_phase < tol;
    return out;
}

PulseSequence synth_sqrt_swap_prime(const Device& device, const SynthOptions& opts) {
    if (device.num_qubits() < 4) throw std::invalid_argument("the LCU needs four qubits");
    PulseSequence seq("sqrt-swap-prime");
    seq.set_model(to_string(device.model));
    if (device.model == ModelKind::XY) {
        // Xbar_13 Z_2 Z_4 and Xbar_24 Z_1 Z_3 are images of Xbar_12 under products of
        // pi/2 Xbar rotations, which act as swaps on single excitations with Z strings.
        const auto inner = xbar_rotation(1, 2, -pi / 4.0, device, opts);
        PulseSequence outer_a;
        outer_a.append(xbar_rotation(1, 3, pi / 2.0, device, opts));
        outer_a.append(xbar_rotation(3, 4, pi / 2.0, device, opts));
        PulseSequence outer_b;
        outer_b.append(xbar_rotation(2, 4, pi / 2.0, device, opts));
        outer_b.append(xbar_rotation(3, 4, pi / 2.0, device, opts));
        seq.append(conjugated(outer_a, inner), "first-term");
        seq.append(conjugated(outer_b, inner), "second-term");
        return seq;
    }
    auto term = [&](int zi, int zj, int xi, int xj) {
        const auto rot = xbar_rotation(xi, xj, pi / 4.0, device, opts);
        const auto mid = conjugated(xbar_rotation(1, 2, pi / 2.0, device, opts), rot);
        return conjugated(ising_rotation(zi, zj, pi / 4.0, device, opts), mid);
    };
    // Matrix order A * B: B acts first.
    seq.append(term(1, 4, 2, 3), "z1z4-xbar23");
    seq.append(term(2, 3, 1, 4), "z2z3-xbar14");
    return seq;
}

PulseSequence synth_lcu(const Device& device, const SynthOptions& opts) {
    PulseSequence seq("lcu");
    seq.set_model(to_string(device.model));
    PulseSequence root;
    root.append(xbar_rotation(1, 3, pi / 4.0, device, opts));
    root.append(xbar_rotation(2, 4, pi / 4.0, device, opts));
    seq.append(root, "sqrt-swap");
    seq.append(synth_sqrt_swap_prime(device, opts), "sqrt-swap-prime");
    return seq;
}

Device lcu_device(ModelKind model) {
    Device::Params params;
    params.allow_long_range = model != ModelKind::XY;
    return Device::uniform(model, 4, params);
}

void PauliRates::validate() const {
    for (double p : {px, py, pz}) {
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("Pauli rates must lie in [0, 1]");
    }
    if (total() > 1.0 + 1e-12) throw std::invalid_argument("Pauli rates must sum to at most 1");
}

char sample_pauli(const PauliRates& rates, Rng& rng) {
    if (rates.total() == 0.0) return 'I';
    const double r = uniform01(rng);
    if (r < rates.px) return 'X';
    if (r < rates.px + rates.py) return 'Y';
    if (r < rates.total()) return 'Z';
    return 'I';
}

void reprepare_zero(StateVector& state, const BlockLayout& layout, int b, BlockResult measured) {
    const auto [q1, q2] = layout.block(b);
    switch (measured) {
        case BlockResult::ZeroL: break;
        case BlockResult::OneL:
            state.apply_pauli('X', q1);
            state.apply_pauli('X', q2);
            break;
        case BlockResult::Leaked00: state.apply_pauli('X', q2); break;
        case BlockResult::Leaked11: state.apply_pauli('X', q1); break;
    }
}

namespace {

LcuOutcome finish_round(StateVector& state, const BlockLayout& layout, int ancilla_block, Rng& rng) {
    LcuOutcome out;
    const auto m = measure_block(state, layout, ancilla_block, rng);
    out.ancilla = m.result;
    out.corrected = m.result == BlockResult::Leaked00 || m.result == BlockResult::Leaked11;
    reprepare_zero(state, layout, ancilla_block, m.result);
    return out;
}

}  // namespace

LcuOutcome lcu_round_ideal(StateVector& state, const BlockLayout& layout, int data_block, int ancilla_block,
                           Rng& rng) {
    static const Matrix l = build_l_ideal().matrix();
    const auto [d1, d2] = layout.block(data_block);
    const auto [a1, a2] = layout.block(ancilla_block);
    const int targets[4] = {d1, d2, a1, a2};
    state.apply_local(l, targets);
    return finish_round(state, layout, ancilla_block, rng);
}

LcuOutcome lcu_round(StateVector& state, const PulseSequence& seq, const Device& device, const PauliRates& faults,
                     Rng& rng) {
    if (state.num_qubits() != 4 || device.num_qubits() != 4) {
        throw std::invalid_argument("lcu_round runs on a 4-qubit data + ancilla register");
    }
    int injected = 0;
    for (const auto& p : seq.pulses()) {
        apply_pulse(p, device, state);
        for (int q : pulse_support(p, 4)) {
            const char c = sample_pauli(faults, rng);
            if (c != 'I') {
                state.apply_pauli(c, q);
                ++injected;
            }
        }
    }
    auto out = finish_round(state, BlockLayout(2), 2, rng);
    out.faults = injected;
    return out;
}

std::optional<int> required_repetitions(double p_c, double confidence) {
    if (!(p_c >= 0.0 && p_c <= 1.0) || !(confidence >= 0.0 && confidence <= 1.0)) {
        throw std::invalid_argument("p_c and confidence must lie in [0, 1]");
    }
    if (confidence <= 0.0) return 0;
    if (p_c >= 1.0) return 1;
    if (p_c <= 0.0 || confidence >= 1.0) return std::nullopt;
    constexpr double slack = 1e-12;
    const double estimate = std::log1p(-confidence) / std::log1p(-p_c);
    int n = std::max(1, static_cast<int>(std::floor(estimate)) - 1);
    while (1.0 - std::pow(1.0 - p_c, n) < confidence - slack) ++n;
    return n;
}

BoostResult simulate_boosting(double p_c, double omega, double confidence, long trials, uint64_t seed,
                              int max_rounds) {
    const auto n = required_repetitions(p_c, confidence);
    if (!n) throw std::invalid_argument("target confidence is unattainable for this p_c");
    BoostResult r;
    r.n = *n;
    r.trials = trials;
    for (long t = 0; t < trials; ++t) {
        Rng rng(split_seed(seed, static_cast<uint64_t>(t)));
        int streak = 0;
        bool any_correct = false;
        for (int round = 0; round < max_rounds && streak < r.n; ++round) {
            if (uniform01(rng) < omega) {
                ++streak;
                any_correct = (uniform01(rng) < p_c) || any_correct;
            } else {
                streak = 0;
                any_correct = false;
            }
        }
        if (streak >= r.n) {
            ++r.conclusive;
            if (any_correct) ++r.conclusive_correct;
        }
    }
    r.rate = static_cast<double>(r.conclusive_correct) / static_cast<double>(trials);
    r.sigma = std::sqrt(r.rate * (1.0 - r.rate) / static_cast<double>(trials));
    return r;
}

namespace {

struct DataInput {
    StateVector state;
    BlockResult expected;
};

DataInput prepare_input(double leak_prob, Rng& rng) {
    const bool leaked = uniform01(rng) < leak_prob;
    const bool high = uniform01(rng) < 0.5;
    uint64_t data = leaked ? (high ? 0b11 : 0b00) : (high ? kOneL : kZeroL);
    BlockResult expected = leaked ? BlockResult::ZeroL : (high ? BlockResult::OneL : BlockResult::ZeroL);
    return {StateVector(4, (data << 2) | kZeroL), expected};
}

bool data_correct(StateVector& state, BlockResult expected, Rng& rng) {
    return measure_block(state, BlockLayout(2), 1, rng).result == expected;
}

}  // namespace

LcuSimRow run_lcu_sim(const LcuSimConfig& config) {
    const PauliRates rates{config.p / 3.0, config.p / 3.0, config.p / 3.0};
    rates.validate();
    if (!(config.leak_prob >= 0.0 && config.leak_prob <= 1.0)) throw std::invalid_argument("leak_prob must lie in [0, 1]");
    if (config.trials <= 0) throw std::invalid_argument("trials must be positive");
    const Device device = lcu_device(config.model);
    const PulseSequence seq = synth_lcu(device);

    LcuSimRow row;
    row.p_injected = config.p;
    row.trials = config.trials;
    long no_leak = 0, no_leak_correct = 0;
    for (long t = 0; t < config.trials; ++t) {
        Rng rng(split_seed(config.seed, static_cast<uint64_t>(t), 0));
        auto in = prepare_input(config.leak_prob, rng);
        const auto out = lcu_round(in.state, seq, device, rates, rng);
        if (out.ancilla != BlockResult::ZeroL) continue;
        ++no_leak;
        if (data_correct(in.state, in.expected, rng)) ++no_leak_correct;
    }
    const double trials = static_cast<double>(config.trials);
    row.omega = static_cast<double>(no_leak) / trials;
    row.p_c = no_leak > 0 ? static_cast<double>(no_leak_correct) / static_cast<double>(no_leak) : 0.0;
    row.n_used = required_repetitions(row.p_c, config.confidence);
    if (!row.n_used) return row;

    long successes = 0;
    for (long t = 0; t < config.trials; ++t) {
        Rng rng(split_seed(config.seed, static_cast<uint64_t>(t), 1));
        auto in = prepare_input(config.leak_prob, rng);
        int streak = 0;
        for (int round = 0; round < config.max_rounds && streak < *row.n_used; ++round) {
            const auto out = lcu_round(in.state, seq, device, rates, rng);
            streak = out.ancilla == BlockResult::ZeroL ? streak + 1 : 0;
        }
        if (streak >= *row.n_used && data_correct(in.state, in.expected, rng)) ++successes;
    }
    row.success_rate = static_cast<double>(successes) / trials;
    return row;
}

}  // namespace exft
