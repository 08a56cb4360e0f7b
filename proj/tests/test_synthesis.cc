#include <gtest/gtest.h>

#include <numbers>
#include <sstream>

#include "exft/code_2quc.h"
#include "exft/synthesis.h"

using namespace exft;
using std::numbers::pi;

namespace {

const ModelKind kModels[] = {ModelKind::XY, ModelKind::Heisenberg, ModelKind::XXZ};

StateVector run(const PulseSequence& seq, const Device& device, const std::string& logical_bits) {
    StateVector s = encode_bits(logical_bits, BlockLayout(static_cast<int>(logical_bits.size())));
    apply_sequence(seq, device, s);
    return s;
}

}  // namespace

TEST(Conjugate, ZeroAngleLeavesRotation) {
    const Matrix ii = pauli_matrix::X() / 2.0, ik = pauli_matrix::Z() / 2.0;
    EXPECT_LT(max_abs(conjugate(ik, 0.0, ii, 0.8) - expm_hermitian(ii, -0.8)), 1e-14);
}

TEST(Conjugate, MatchesRotatedExponential) {
    const Matrix a = pauli_matrix::X() / 2.0, b = pauli_matrix::Y() / 2.0, c = pauli_matrix::Z() / 2.0;
    EXPECT_LT(max_abs(conjugate(c, 0.3, a, 1.1) - rotated_exponential(a, b, 0.3, 1.1)), 1e-13);
}

TEST(PulseSequence, InverseCompilesToAdjoint) {
    const Device d = Device::uniform(ModelKind::XXZ, 3);
    PulseSequence s;
    s.append(ExchangePulse{1, 2, 0.3});
    s.append(FieldPulse{0.7});
    s.append(ExchangePulse{2, 3, -0.2});
    EXPECT_LT(max_abs(compile(s.inverse(), d) - compile(s, d).adjoint()), 1e-13);
}

TEST(PulseSequence, TextRoundTrip) {
    const Device d = Device::uniform(ModelKind::Heisenberg, 4);
    const BlockLayout layout(2);
    const auto seq = synth_encoded_cnot(layout.block(1), layout.block(2), d);
    std::istringstream in(to_text(seq, 4));
    const auto back = read_sequence(in);
    EXPECT_EQ(back.model(), "heisenberg");
    EXPECT_EQ(back.gate(), seq.gate());
    ASSERT_EQ(back.pulse_count(), seq.pulse_count());
    EXPECT_LT(max_abs(compile(back, d) - compile(seq, d)), 1e-12);
}

TEST(PulseSequence, TextFormatLines) {
    PulseSequence s("demo");
    s.set_model("xy");
    s.append(ExchangePulse{1, 2, 0.5});
    s.append(FieldPulse{0.25});
    const std::string text = to_text(s, 2);
    EXPECT_NE(text.find("model xy"), std::string::npos);
    EXPECT_NE(text.find("gate demo"), std::string::npos);
    EXPECT_NE(text.find("EX 1 2 0.5"), std::string::npos);
    EXPECT_NE(text.find("GF 0.25"), std::string::npos);
}

TEST(Recouple, ZeroTimeIsIdentity) {
    const Device d = Device::uniform(ModelKind::XXZ, 3);
    for (auto sign : {RecoupleSign::Plus, RecoupleSign::Minus}) {
        EXPECT_TRUE(equal_up_to_phase(compile(recouple(1, 2, sign, 0.0, d), d), Matrix::Identity(8, 8)).equal);
    }
}

TEST(SingleZ, ZeroTimeIsIdentity) {
    const Device d = Device::uniform(ModelKind::Heisenberg, 3);
    EXPECT_TRUE(equal_up_to_phase(compile(make_single_z(1, 2, 0.0, d), d), Matrix::Identity(8, 8)).equal);
}

TEST(XYModel, NeverEmitsIsingTerms) {
    const Device d = Device::uniform(ModelKind::XY, 4);
    EXPECT_THROW(ising_rotation(1, 2, 0.3, d), std::invalid_argument);
}

TEST(EncodedHadamard, MapsZeroToPlus) {
    for (ModelKind m : kModels) {
        const Device d = Device::uniform(m, 3);
        StateVector s = StateVector::from_bits("010");
        apply_sequence(synth_encoded_hadamard({1, 2}, d), d, s);
        EXPECT_NEAR(std::abs(s[0b010]), 1.0 / std::sqrt(2.0), 1e-10) << to_string(m);
        EXPECT_NEAR(std::abs(s[0b100]), 1.0 / std::sqrt(2.0), 1e-10) << to_string(m);
        EXPECT_NEAR(std::abs(s[0b010] - s[0b100]), 0.0, 1e-10) << to_string(m);
    }
}

TEST(EncodedCP, PhaseOnOneOne) {
    for (ModelKind m : kModels) {
        const Device d = Device::uniform(m, 4);
        const auto seq = synth_encoded_cp({1, 2}, {3, 4}, d);
        const cplx ref = run(seq, d, "00")[0b0101];
        const cplx one_one = run(seq, d, "11")[0b1010];
        EXPECT_NEAR(std::abs(ref), 1.0, 1e-10);
        EXPECT_NEAR(std::abs(one_one / ref + 1.0), 0.0, 1e-10) << to_string(m);
        EXPECT_NEAR(std::abs(run(seq, d, "01")[0b0110] / ref - 1.0), 0.0, 1e-10) << to_string(m);
    }
}

TEST(EncodedCNOT, TruthTable) {
    for (ModelKind m : kModels) {
        const Device d = Device::uniform(m, 4);
        const auto seq = synth_encoded_cnot({1, 2}, {3, 4}, d);
        EXPECT_NEAR(std::abs(run(seq, d, "00")[0b0101]), 1.0, 1e-10) << to_string(m);
        EXPECT_NEAR(std::abs(run(seq, d, "10")[0b1010]), 1.0, 1e-10) << to_string(m);
        EXPECT_NEAR(std::abs(run(seq, d, "11")[0b1001]), 1.0, 1e-10) << to_string(m);
        ASSERT_EQ(seq.segments().size(), 3u);
        EXPECT_EQ(seq.segments()[1].name, "CP");
    }
}

TEST(EncodedCP, RequiresAdjacentBlocks) {
    const Device d = Device::uniform(ModelKind::XY, 6);
    EXPECT_THROW(synth_encoded_cp({1, 2}, {5, 6}, d), std::invalid_argument);
}
