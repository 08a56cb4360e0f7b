#include <gtest/gtest.h>

#include "exft/code_2quc.h"
#include "exft/random.h"

using namespace exft;

TEST(Encode, BasisStates) {
    const BlockLayout one(1);
    EXPECT_NEAR(std::abs(encode_bits("0", one)[0b01]), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(encode_bits("1", one)[0b10]), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(encode_bits("10", BlockLayout(2))[0b1001]), 1.0, 1e-15);
}

TEST(Encode, Superposition) {
    Vector a(2);
    a << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    const auto s = encode(StateVector(1, a), BlockLayout(1));
    EXPECT_NEAR(s[0b01].real(), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(s[0b10].real(), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(std::abs(s[0b00]) + std::abs(s[0b11]), 0.0, 1e-15);
}

TEST(Decode, LeakedStateFails) {
    const auto r = decode(StateVector::from_bits("00"), BlockLayout(1));
    EXPECT_TRUE(r.failed());
    EXPECT_NEAR(r.leakage_weight, 1.0, 1e-15);
}

TEST(Decode, PartialLeakage) {
    Vector a = Vector::Zero(4);
    a[0b01] = a[0b00] = 1.0 / std::sqrt(2.0);
    const auto r = decode(StateVector(2, a), BlockLayout(1));
    ASSERT_FALSE(r.failed());
    EXPECT_NEAR(r.leakage_weight, 0.5, 1e-15);
    EXPECT_NEAR(std::abs((*r.logical)[0]), 1.0, 1e-15);
}

TEST(Decode, InvertsEncode) {
    Vector a(4);
    a << cplx(0.1, 0.2), cplx(-0.5, 0.1), cplx(0.3, 0.0), cplx(0.2, -0.7);
    StateVector logical(2, a);
    logical.normalize();
    const auto r = decode(encode(logical, BlockLayout(2)), BlockLayout(2));
    ASSERT_FALSE(r.failed());
    EXPECT_LT((r.logical->amplitudes() - logical.amplitudes()).norm(), 1e-14);
}

TEST(Projectors, CodeAndLeakageAreComplementary) {
    const BlockLayout layout(2);
    for (int b : {1, 2}) {
        const Matrix sum = block_code_projector(layout, b) + block_leakage_projector(layout, b);
        EXPECT_LT(max_abs(sum - Matrix::Identity(16, 16)), 1e-15);
    }
    EXPECT_EQ(code_subspace(layout).dim(), 4);
}

TEST(LogicalMap, RoundTrip) {
    const BlockLayout layout(1);
    const Matrix x = pauli_matrix::X();
    EXPECT_LT(max_abs(physical_to_logical(logical_to_physical(x, layout), layout) - x), 1e-15);
}

TEST(MeasureBlock, DeterministicOutcomes) {
    const BlockLayout layout(2);
    Rng rng(7);
    StateVector a = StateVector::from_bits("0110");
    EXPECT_EQ(measure_block(a, layout, 1, rng).result, BlockResult::ZeroL);
    StateVector b = StateVector::from_bits("0010");
    EXPECT_EQ(measure_block(b, layout, 1, rng).result, BlockResult::Leaked00);
    EXPECT_EQ(measure_block(b, layout, 2, rng).result, BlockResult::OneL);
}

TEST(MeasureBlock, BornFrequencies) {
    Vector a = Vector::Zero(4);
    a[0b01] = a[0b10] = 1.0 / std::sqrt(2.0);
    const StateVector plus(2, a);
    Rng rng(split_seed(2024, 0));
    int zero = 0, one = 0;
    const int samples = 10000;
    for (int k = 0; k < samples; ++k) {
        StateVector s = plus;
        const auto r = measure_block(s, BlockLayout(1), 1, rng).result;
        zero += r == BlockResult::ZeroL;
        one += r == BlockResult::OneL;
    }
    EXPECT_EQ(zero + one, samples);
    EXPECT_NEAR(zero / static_cast<double>(samples), 0.5, 0.02);
    EXPECT_NEAR(one / static_cast<double>(samples), 0.5, 0.02);
}

TEST(MeasureBlock, CollapsesState) {
    Vector a = Vector::Zero(4);
    a[0b01] = a[0b00] = 1.0 / std::sqrt(2.0);
    StateVector s(2, a);
    Rng rng(3);
    const auto r = measure_block(s, BlockLayout(1), 1, rng);
    const uint64_t idx = r.result == BlockResult::ZeroL ? 0b01 : 0b00;
    EXPECT_NEAR(std::abs(s[idx]), 1.0, 1e-15);
    EXPECT_NEAR(r.probabilities[0], 0.5, 1e-15);
    EXPECT_NEAR(r.probabilities[2], 0.5, 1e-15);
}

TEST(Random, SplitSeedIsStableAndDistinct) {
    EXPECT_EQ(split_seed(1, 2, 3), split_seed(1, 2, 3));
    EXPECT_NE(split_seed(1, 2, 0), split_seed(1, 3, 0));
    EXPECT_NE(split_seed(1, 2, 0), split_seed(1, 2, 1));
    Rng rng(5);
    for (int k = 0; k < 1000; ++k) {
        const double u = uniform01(rng);
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
    }
}
