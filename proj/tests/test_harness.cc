#include <gtest/gtest.h>

#include "exft/harness.h"

using namespace exft;

namespace {

RoundSetup phase3_setup(double p = 0.0) {
    RoundSetup s;
    s.code = build_hybrid(presets::phase3());
    s.channel.rates = PauliRates{p, p, p};
    return s;
}

}  // namespace

TEST(ErrorChannel, ParsesTriple) {
    const auto c = ErrorChannel::parse("0.01,0.02,0.03");
    EXPECT_DOUBLE_EQ(c.rates.px, 0.01);
    EXPECT_DOUBLE_EQ(c.rates.pz, 0.03);
    EXPECT_THROW(ErrorChannel::parse("0.1,0.2"), std::invalid_argument);
    EXPECT_THROW(ErrorChannel::parse("0.6,0.6,0.0"), std::invalid_argument);
}

TEST(RunFtRound, NoiselessIsClean) {
    for (auto input : {InputState::Zero, InputState::Plus, InputState::Random}) {
        auto s = phase3_setup();
        s.input = input;
        const auto r = run_ft_round(s, 0, 5);
        EXPECT_EQ(r.verdict, Verdict::Clean);
        EXPECT_NEAR(r.fidelity, 1.0, 1e-9);
        EXPECT_TRUE(r.events.empty());
    }
}

TEST(RunFtRound, SingleZIsCorrected) {
    auto s = phase3_setup();
    s.forced_faults = std::vector<ErrorEvent>{{3, 'Z', 0}};
    const auto r = run_ft_round(s, 0, 5);
    EXPECT_EQ(r.verdict, Verdict::Corrected);
    EXPECT_EQ(r.syndrome, (Syndrome{1, 1}));
}

TEST(RunFtRound, SingleXNeedsTheLcu) {
    auto s = phase3_setup();
    s.forced_faults = std::vector<ErrorEvent>{{1, 'X', 0}};
    s.lcu = false;
    EXPECT_EQ(run_ft_round(s, 0, 5).verdict, Verdict::LeakageFailure);
    s.lcu = true;
    const auto r = run_ft_round(s, 0, 5);
    EXPECT_EQ(r.verdict, Verdict::Corrected);
    ASSERT_EQ(r.lcu.size(), 3u);
    EXPECT_TRUE(r.lcu[0].corrected);
    EXPECT_FALSE(r.lcu[1].corrected);
}

TEST(RunFtRound, DependsOnlyOnSeedAndIndex) {
    auto s = phase3_setup(0.01);
    const auto a = run_ft_round(s, 17, 99), b = run_ft_round(s, 17, 99);
    EXPECT_EQ(a.seed, b.seed);
    EXPECT_EQ(a.verdict, b.verdict);
    EXPECT_EQ(a.events.size(), b.events.size());
    EXPECT_EQ(a.fidelity, b.fidelity);
}

TEST(RunTrials, ThreadCountDoesNotChangeResults) {
    const auto s = phase3_setup(0.005);
    const auto one = run_trials(s, 200, 42, 1);
    const auto many = run_trials(s, 200, 42, 4);
    ASSERT_EQ(one.size(), many.size());
    for (size_t k = 0; k < one.size(); ++k) {
        EXPECT_EQ(one[k].verdict, many[k].verdict);
        EXPECT_EQ(one[k].fidelity, many[k].fidelity);
    }
}

TEST(Sweep, ZeroRateNeverFails) {
    const auto rows = sweep(phase3_setup(), {PauliRates{}}, {false, true}, 50, 1);
    ASSERT_EQ(rows.size(), 2u);
    for (const auto& r : rows) {
        EXPECT_EQ(r.clean, 50);
        EXPECT_DOUBLE_EQ(r.failure_rate, 0.0);
    }
}

TEST(Sweep, FailureRateGrowsWithNoise) {
    const std::vector<PauliRates> grid{{0.001, 0.001, 0.001}, {0.02, 0.02, 0.02}};
    const auto rows = sweep(phase3_setup(), grid, {true}, 400, 3);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_LT(rows[0].failure_rate, rows[1].failure_rate);
    EXPECT_LE(rows[1].wilson_low, rows[1].failure_rate);
    EXPECT_GE(rows[1].wilson_high, rows[1].failure_rate);
}

TEST(Sweep, CsvHeaderAndRows) {
    const auto rows = sweep(phase3_setup(), {PauliRates{}}, {true}, 5, 1);
    const std::string csv = sweep_csv(rows);
    EXPECT_EQ(csv.substr(0, csv.find('\n')),
              "px,py,pz,lcu,trials,clean,corrected,logical_failures,leakage_failures,failure_rate,wilson_low,"
              "wilson_high");
    EXPECT_NE(csv.find("0,0,0,on,5,5,0,0,0,0,"), std::string::npos);
}

TEST(Wilson, KnownInterval) {
    const auto ci = wilson_interval(0, 100);
    EXPECT_NEAR(ci.low, 0.0, 1e-15);
    EXPECT_NEAR(ci.high, 0.037, 1e-3);
}

TEST(Transversality, BlockPairwiseCnotDoesNotSpread) {
    const auto report = transversality_check("transversal", transversal_cnot(2), 2, 2);
    EXPECT_TRUE(report.transversal);
    EXPECT_FALSE(report.entries.empty());
}

TEST(Transversality, InCodewordCnotIsFlagged) {
    const auto report = transversality_check("nontransversal", nontransversal_cnot(2), 2, 2);
    EXPECT_FALSE(report.transversal);
}

TEST(Transversality, IdentityKeepsSupport) {
    const auto report = transversality_check("identity", Matrix::Identity(16, 16), 2, 2);
    EXPECT_TRUE(report.transversal);
    for (const auto& e : report.entries) {
        EXPECT_EQ(e.image_support.size(), 1u) << e.error;
        EXPECT_FALSE(e.spreads);
    }
}
