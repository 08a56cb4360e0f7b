#include <gtest/gtest.h>

#include <numbers>

#include "exft/hybrid.h"
#include "exft/synthesis.h"

using namespace exft;

TEST(PauliString, ParseAndPrint) {
    const auto p = PauliString::parse("-iXYZI");
    EXPECT_EQ(p.num_qubits(), 4);
    EXPECT_EQ(p.letters(), "XYZI");
    EXPECT_EQ(p.phase_power(), 3);
    EXPECT_EQ(p.weight(), 3);
    EXPECT_EQ(p.support(), (std::vector<int>{1, 2, 3}));
    EXPECT_THROW(PauliString::parse("XQ"), std::invalid_argument);
}

TEST(PauliString, ProductTracksPhase) {
    const auto xy = PauliString::parse("X") * PauliString::parse("Y");
    EXPECT_EQ(xy.letters(), "Z");
    EXPECT_EQ(xy.phase_power(), 1);
    EXPECT_LT(max_abs(xy.matrix() - pauli_matrix::X() * pauli_matrix::Y()), 1e-15);
}

TEST(PauliString, Commutation) {
    EXPECT_FALSE(PauliString::parse("XI").commutes_with(PauliString::parse("ZI")));
    EXPECT_TRUE(PauliString::parse("XX").commutes_with(PauliString::parse("ZZ")));
    EXPECT_TRUE(PauliString::parse("XYZ").commutes_with(PauliString::parse("XYZ")));
}

TEST(PauliString, ApplyMatchesMatrix) {
    const auto p = PauliString::parse("iYXZ");
    Vector a(8);
    for (int k = 0; k < 8; ++k) a[k] = cplx(k + 1, -k);
    StateVector s(3, a);
    s.normalize();
    StateVector t = s;
    p.apply(s);
    t.apply(p.matrix());
    EXPECT_LT((s.amplitudes() - t.amplitudes()).norm(), 1e-14);
}

TEST(PauliList, Parses) {
    const auto gens = parse_pauli_list("XXI, IXX");
    ASSERT_EQ(gens.size(), 2u);
    EXPECT_EQ(gens[1].letters(), "IXX");
}

TEST(BaseCode, RejectsAnticommutingGenerators) {
    EXPECT_THROW(make_base_code("bad", parse_pauli_list("XI, ZI"), PauliString::parse("XX"), PauliString::parse("ZZ")),
                 std::invalid_argument);
}

TEST(Classification, Examples) {
    const auto xx = classify_block_error("XX");
    EXPECT_EQ(xx.verdict, ErrorVerdict::Logical);
    EXPECT_EQ(xx.logical, 'X');
    EXPECT_EQ(xx.phase_power, 0);
    const auto zz = classify_block_error("ZZ");
    EXPECT_EQ(zz.verdict, ErrorVerdict::Logical);
    EXPECT_EQ(zz.logical, 'I');
    EXPECT_EQ(zz.phase_power, 2);
    EXPECT_EQ(classify_block_error("XZ").verdict, ErrorVerdict::Leakage);
    EXPECT_EQ(classify_block_error("XI").verdict, ErrorVerdict::Leakage);
    EXPECT_EQ(classify_block_error("IY").verdict, ErrorVerdict::Leakage);
    const auto zi = classify_block_error("ZI");
    EXPECT_EQ(zi.verdict, ErrorVerdict::Logical);
    EXPECT_EQ(zi.logical, 'Z');
    const auto iz = classify_block_error("IZ");
    EXPECT_EQ(iz.logical, 'Z');
    EXPECT_EQ(iz.phase_power, 2);
}

TEST(Classification, CoversAllSixteen) {
    const auto all = classify_all_block_errors();
    ASSERT_EQ(all.size(), 16u);
    int logical = 0, leakage = 0;
    for (const auto& c : all) {
        logical += c.verdict == ErrorVerdict::Logical || c.verdict == ErrorVerdict::Identity;
        leakage += c.verdict == ErrorVerdict::Leakage;
    }
    EXPECT_EQ(logical, 8);
    EXPECT_EQ(leakage, 8);
}

TEST(Expansion, ActsAsLogicalPauliOnBlock) {
    const BlockLayout layout(1);
    for (char c : {'X', 'Y', 'Z'}) {
        const Matrix phys = expand_letter(c, 1, 1).matrix();
        EXPECT_LT(max_abs(physical_to_logical(phys, layout) - pauli_matrix::from_letter(c)), 1e-15) << c;
    }
}

TEST(Hybrid, Phase3Codewords) {
    const auto code = build_hybrid(presets::phase3());
    ASSERT_EQ(code.num_qubits(), 6);
    const double amp = 1.0 / (2.0 * std::sqrt(2.0));
    for (uint64_t i = 0; i < 64; ++i) {
        bool in_code = true;
        int ones = 0;
        for (int b = 0; b < 3; ++b) {
            const uint64_t pair = (i >> (4 - 2 * b)) & 3;
            if (pair != kZeroL && pair != kOneL) in_code = false;
            ones += pair == kOneL;
        }
        const double expect_zero = in_code ? amp : 0.0;
        const double expect_one = in_code ? (ones % 2 ? -amp : amp) : 0.0;
        EXPECT_NEAR(std::abs(code.zero[i] - code.zero[0b010101] / amp * expect_zero), 0.0, 1e-14);
        EXPECT_NEAR(std::abs(code.one[i] - code.one[0b010101] / amp * expect_one), 0.0, 1e-14);
    }
    EXPECT_EQ(code.generators[0].letters(), "XXXXII");
    EXPECT_EQ(code.generators[1].letters(), "IIXXXX");
}

TEST(Hybrid, TrivialIsPlain2QUC) {
    const auto code = build_hybrid(presets::trivial());
    EXPECT_EQ(code.num_qubits(), 2);
    EXPECT_TRUE(code.generators.empty());
    EXPECT_NEAR(std::abs(code.zero[kZeroL]), 1.0, 1e-15);
}

TEST(Syndrome, Examples) {
    const auto code = build_hybrid(presets::phase3());
    StateVector clean = code.zero;
    EXPECT_EQ(extract_syndrome(clean, code), (Syndrome{0, 0}));
    StateVector z1 = code.zero;
    z1.apply_pauli('Z', 1);
    EXPECT_EQ(extract_syndrome(z1, code), (Syndrome{1, 0}));
    StateVector z3 = code.zero;
    z3.apply_pauli('Z', 3);
    EXPECT_EQ(extract_syndrome(z3, code), (Syndrome{1, 1}));
}

TEST(Syndrome, RejectsLeakedState) {
    const auto code = build_hybrid(presets::phase3());
    StateVector s = code.zero;
    s.apply_pauli('X', 2);
    EXPECT_THROW(extract_syndrome(s, code), LeakagePrecondition);
}

TEST(Correct, EverySingleZ) {
    const auto code = build_hybrid(presets::phase3());
    const StateVector target = code.codeword(0.6, cplx(0.0, 0.8));
    for (int q = 1; q <= 6; ++q) {
        StateVector s = target;
        s.apply_pauli('Z', q);
        const auto syn = extract_syndrome(s, code);
        const auto c = correct(s, syn, code);
        EXPECT_TRUE(c.recognized);
        EXPECT_NEAR(fidelity(s, target), 1.0, 1e-12) << "Z" << q;
    }
}

TEST(Correct, InBlockLogicalZErrors) {
    const auto code = build_hybrid(presets::phase3());
    const StateVector target = code.codeword(0.8, 0.6);
    for (int b = 1; b <= 3; ++b) {
        for (const char* pair : {"ZI", "IZ"}) {
            StateVector s = target;
            s.apply_pauli(pair[0], 2 * b - 1);
            s.apply_pauli(pair[1], 2 * b);
            correct(s, extract_syndrome(s, code), code);
            EXPECT_NEAR(fidelity(s, target), 1.0, 1e-12);
        }
    }
}

TEST(Correct, ZeroSyndromeIsIdentity) {
    const auto code = build_hybrid(presets::phase3());
    StateVector s = code.one;
    const auto c = correct(s, Syndrome{0, 0}, code);
    EXPECT_TRUE(c.recognized);
    EXPECT_TRUE(c.logical.is_identity());
    EXPECT_NEAR(fidelity(s, code.one), 1.0, 1e-15);
}

TEST(Correct, Perfect5HandlesEverySingleLogicalError) {
    const auto code = build_hybrid(presets::perfect5());
    const StateVector target = code.codeword(0.6, 0.8);
    for (int b = 1; b <= 5; ++b) {
        for (char c : {'X', 'Y', 'Z'}) {
            StateVector s = target;
            expand_letter(c, b, 5).apply(s);
            correct(s, extract_syndrome(s, code), code);
            EXPECT_NEAR(fidelity(s, target), 1.0, 1e-12) << c << b;
        }
    }
}

TEST(Propagation, X1BeforeCnotStaysOnQubitOne) {
    const Device device = Device::uniform(ModelKind::XY, 4);
    const BlockLayout layout(2);
    const auto cnot = synth_encoded_cnot(layout.block(1), layout.block(2), device);
    const auto r = propagate_fault(cnot, device, layout, 1, 'X', 0);
    EXPECT_TRUE(r.at_boundary);
    EXPECT_EQ(r.support, std::vector<int>{1});
    EXPECT_EQ(r.leaked_blocks, std::vector<int>{1});
    EXPECT_NEAR(r.leakage_fraction, 1.0, 1e-9);
    const auto between = propagate_fault(cnot, device, layout, 1, 'X', static_cast<int>(cnot.segments()[0].end));
    EXPECT_TRUE(between.at_boundary);
    EXPECT_EQ(between.support, std::vector<int>{1});
}

TEST(Propagation, SweepCoversEveryInsertion) {
    const Device device = Device::uniform(ModelKind::Heisenberg, 4);
    const BlockLayout layout(2);
    const auto cp = synth_encoded_cp(layout.block(1), layout.block(2), device);
    const auto rows = sweep_insertions(cp, device, layout, 2, 'Y');
    ASSERT_EQ(rows.size(), cp.pulse_count() + 1);
    for (size_t k = 0; k < rows.size(); ++k) EXPECT_EQ(rows[k].insertion, static_cast<int>(k));
}

TEST(MinimalSupport, FindsSingleQubitFactor) {
    const Matrix p = Matrix::Identity(8, 8);
    const Matrix m = kron_embed(pauli_matrix::Y(), {2}, 3);
    EXPECT_EQ(minimal_support(m, p, 3), std::vector<int>{2});
}
