#include <gtest/gtest.h>

#include "exft/lcu.h"

using namespace exft;

namespace {

StateVector product(const std::string& bits) { return StateVector::from_bits(bits); }

}  // namespace

TEST(LcuIdeal, FactorsCommute) {
    const Matrix a = build_sqrt_swap(), b = build_sqrt_swap_prime();
    EXPECT_LT(max_abs(a * b - b * a), 1e-12);
}

TEST(LcuIdeal, MatchesDirectExponential) {
    const Matrix g = generators::xbar(1, 3, 4) + generators::xbar(2, 4, 4) +
                     generators::xbar(1, 3, 4) * generators::zz(2, 4, 4) +
                     generators::xbar(2, 4, 4) * generators::zz(1, 3, 4);
    EXPECT_TRUE(equal_up_to_phase(build_l_ideal().matrix(), expm_hermitian(g, std::numbers::pi / 4)).equal);
}

TEST(LcuIdeal, ActionTableRowsMapCorrectly) {
    const auto check = check_action_table(build_l_ideal().matrix());
    EXPECT_TRUE(check.rows_map_correctly);
    for (const auto& row : check.rows) EXPECT_LT(row.leakage, 1e-10) << row.input;
}

TEST(LcuSynthesis, MatchesIdealForEveryModel) {
    for (ModelKind m : {ModelKind::XY, ModelKind::Heisenberg, ModelKind::XXZ}) {
        const Device d = lcu_device(m);
        EXPECT_TRUE(equal_up_to_phase(compile(synth_sqrt_swap_prime(d), d), build_sqrt_swap_prime()).equal)
            << to_string(m);
        EXPECT_TRUE(equal_up_to_phase(compile(synth_lcu(d), d), build_l_ideal().matrix()).equal) << to_string(m);
    }
}

TEST(LcuRound, CodeInputIsUntouched) {
    const Device d = lcu_device(ModelKind::XY);
    const auto seq = synth_lcu(d);
    Rng rng(1);
    for (const char* bits : {"0101", "1001"}) {
        StateVector s = product(bits);
        const auto out = lcu_round(s, seq, d, PauliRates{}, rng);
        EXPECT_EQ(out.ancilla, BlockResult::ZeroL);
        EXPECT_FALSE(out.corrected);
        EXPECT_NEAR(std::abs(s.inner(product(bits))), 1.0, 1e-10) << bits;
    }
}

TEST(LcuRound, LeakedInputIsSwappedOutAndReset) {
    for (ModelKind m : {ModelKind::XY, ModelKind::Heisenberg}) {
        const Device d = lcu_device(m);
        const auto seq = synth_lcu(d);
        Rng rng(2);
        StateVector s = product("1101");
        const auto out = lcu_round(s, seq, d, PauliRates{}, rng);
        EXPECT_EQ(out.ancilla, BlockResult::Leaked11);
        EXPECT_TRUE(out.corrected);
        EXPECT_NEAR(std::abs(s.inner(product("0101"))), 1.0, 1e-10) << to_string(m);
        StateVector t = product("0001");
        EXPECT_EQ(lcu_round(t, seq, d, PauliRates{}, rng).ancilla, BlockResult::Leaked00);
        EXPECT_NEAR(std::abs(t.inner(product("0101"))), 1.0, 1e-10);
    }
}

TEST(LcuRound, IdealRoundOnLargerRegister) {
    const BlockLayout layout(3);
    Rng rng(4);
    StateVector s = StateVector::from_bits("011101");
    const auto out = lcu_round_ideal(s, layout, 2, 3, rng);
    EXPECT_TRUE(out.corrected);
    EXPECT_NEAR(std::abs(s.inner(StateVector::from_bits("010101"))), 1.0, 1e-10);
}

TEST(PauliRates, Validation) {
    EXPECT_THROW((PauliRates{0.5, 0.4, 0.2}.validate()), std::invalid_argument);
    EXPECT_THROW((PauliRates{-0.1, 0.0, 0.0}.validate()), std::invalid_argument);
    EXPECT_NO_THROW((PauliRates{0.1, 0.2, 0.3}.validate()));
    Rng rng(9);
    EXPECT_EQ(sample_pauli(PauliRates{}, rng), 'I');
    EXPECT_EQ(sample_pauli(PauliRates{1.0, 0.0, 0.0}, rng), 'X');
}

TEST(RequiredRepetitions, Examples) {
    EXPECT_EQ(required_repetitions(0.9, 0.99), 2);
    EXPECT_EQ(required_repetitions(0.5, 0.5), 1);
    EXPECT_EQ(required_repetitions(0.5, 0.9), 4);
    EXPECT_EQ(required_repetitions(1.0, 0.999), 1);
    EXPECT_FALSE(required_repetitions(0.0, 0.9).has_value());
    EXPECT_THROW(required_repetitions(1.5, 0.9), std::invalid_argument);
}

TEST(RequiredRepetitions, MonotoneInConfidenceAndRate) {
    int last = 0;
    for (double c = 0.1; c < 0.9999; c += 0.05) {
        const int n = *required_repetitions(0.3, c);
        EXPECT_GE(n, last);
        EXPECT_GE(1.0 - std::pow(0.7, n), c - 1e-12);
        last = n;
    }
    last = 1 << 20;
    for (double p = 0.05; p < 1.0; p += 0.05) {
        const int n = *required_repetitions(p, 0.99);
        EXPECT_LE(n, last);
        last = n;
    }
}

TEST(Boosting, SyntheticProtocolMeetsConfidence) {
    const auto r = simulate_boosting(0.9, 0.95, 0.99, 20000, 11);
    EXPECT_EQ(r.n, 2);
    EXPECT_EQ(r.conclusive, r.trials);
    EXPECT_GE(r.rate, 0.99 - 3 * std::max(r.sigma, 1e-4));
}

TEST(LcuSim, FaultFreeIsPerfect) {
    LcuSimConfig c;
    c.p = 0.0;
    c.trials = 400;
    const auto row = run_lcu_sim(c);
    EXPECT_NEAR(row.omega, 0.5, 0.1);
    EXPECT_DOUBLE_EQ(row.p_c, 1.0);
    EXPECT_EQ(row.n_used, 1);
    EXPECT_DOUBLE_EQ(row.success_rate, 1.0);
}

TEST(LcuSim, DeterministicForSeed) {
    LcuSimConfig c;
    c.p = 0.02;
    c.trials = 300;
    c.seed = 77;
    const auto a = run_lcu_sim(c), b = run_lcu_sim(c);
    EXPECT_EQ(a.omega, b.omega);
    EXPECT_EQ(a.p_c, b.p_c);
    EXPECT_EQ(a.success_rate, b.success_rate);
    EXPECT_LT(a.p_c, 1.0);
}
