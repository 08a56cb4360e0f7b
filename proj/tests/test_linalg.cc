#include <gtest/gtest.h>

#include <numbers>

#include "exft/hamiltonians.h"
#include "exft/linalg.h"

using namespace exft;
using std::numbers::pi;

namespace {

Matrix taylor_expm(const Matrix& h, double t) {
    const Matrix a = cplx(0, -t) * h;
    Matrix term = Matrix::Identity(h.rows(), h.cols());
    Matrix sum = term;
    for (int k = 1; k < 60; ++k) {
        term = term * a / static_cast<double>(k);
        sum += term;
    }
    return sum;
}

}  // namespace

TEST(KronEmbed, ZOnSingleQubitIsDiagonal) {
    const Matrix z = kron_embed(pauli_matrix::Z(), {1}, 1);
    EXPECT_EQ(z(0, 0), cplx(1));
    EXPECT_EQ(z(1, 1), cplx(-1));
    EXPECT_EQ(z(0, 1), cplx(0));
}

TEST(KronEmbed, XOnSecondQubitFlipsLowBit) {
    StateVector s = StateVector::from_bits("00");
    s.apply(kron_embed(pauli_matrix::X(), {2}, 2));
    EXPECT_NEAR(std::abs(s[0b01]), 1.0, 1e-15);
}

TEST(KronEmbed, TargetOrderFollowsFactorOrder) {
    const Matrix xz = kron_embed(kron(pauli_matrix::X(), pauli_matrix::Z()), {3, 1}, 3);
    const Matrix expect = kron(kron(pauli_matrix::Z(), pauli_matrix::I()), pauli_matrix::X());
    EXPECT_LT(max_abs(xz - expect), 1e-15);
}

TEST(KronEmbed, RejectsBadTargets) {
    EXPECT_THROW(kron_embed(pauli_matrix::Z(), {0}, 2), std::out_of_range);
    EXPECT_THROW(kron_embed(pauli_matrix::Z(), {3}, 2), std::out_of_range);
}

TEST(Expm, ZeroTimeIsIdentity) {
    const Matrix h = build_hij(1, 2, 1.0, 0.3, 3).matrix();
    EXPECT_LT(max_abs(expm_hermitian(h, 0.0) - Matrix::Identity(8, 8)), 1e-14);
}

TEST(Expm, DiagonalZ) {
    const Matrix u = expm_hermitian(pauli_matrix::Z(), pi / 2);
    EXPECT_NEAR(std::abs(u(0, 0) - std::exp(cplx(0, -pi / 2))), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(u(1, 1) - std::exp(cplx(0, pi / 2))), 0.0, 1e-14);
}

TEST(Expm, ExchangeSwapsSingleExcitation) {
    const Matrix h = build_hij(1, 2, 1.0, 0.0, 2).matrix();
    const Matrix u = expm_hermitian(h, pi / 4);
    EXPECT_NEAR(std::abs(u(0b10, 0b01) - cplx(0, -1)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(u(0b00, 0b00) - cplx(1)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(u(0b11, 0b11) - cplx(1)), 0.0, 1e-14);
}

TEST(Expm, AgreesWithTaylorSeries) {
    const Matrix h = build_hij(1, 3, 0.8, 0.45, 3).matrix() + build_h0(GlobalField({1.0, 1.37, 1.74})).matrix();
    for (double t : {-1.3, 0.2, 0.9}) EXPECT_LT(max_abs(expm_hermitian(h, t) - taylor_expm(h, t)), 1e-12);
}

TEST(Expm, RejectsNonHermitian) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1.0;
    EXPECT_THROW(expm_hermitian(m, 1.0), std::invalid_argument);
}

TEST(EqualUpToPhase, ExtractsGlobalPhase) {
    const Matrix u = expm_hermitian(build_hij(1, 2, 1.0, 0.2, 2).matrix(), 0.7);
    const auto r = equal_up_to_phase(std::exp(cplx(0, pi / 7)) * u, u);
    EXPECT_TRUE(r.equal);
    EXPECT_NEAR(r.phase, pi / 7, 1e-12);
}

TEST(EqualUpToPhase, DistinguishesXFromZ) { EXPECT_FALSE(equal_up_to_phase(pauli_matrix::X(), pauli_matrix::Z()).equal); }

TEST(RestrictedFidelity, IgnoresComplement) {
    const Subspace s(2, Matrix::Identity(4, 2));
    Matrix u = Matrix::Identity(4, 4);
    u.block(2, 2, 2, 2) = pauli_matrix::X();
    EXPECT_NEAR(restricted_fidelity(u, Matrix::Identity(4, 4), s), 1.0, 1e-14);
}

TEST(RestrictedFidelity, ZRotationByPiOnLogicalQubitIsOrthogonal) {
    const Subspace s(1, Matrix::Identity(2, 2));
    EXPECT_NEAR(restricted_fidelity(pauli_matrix::Z(), Matrix::Identity(2, 2), s), 0.0, 1e-14);
}

TEST(StateVector, ApplyLocalMatchesDenseEmbedding) {
    Vector amps(8);
    for (int i = 0; i < 8; ++i) amps[i] = cplx(0.1 * i, 0.05 * (7 - i));
    StateVector a(3, amps);
    a.normalize();
    StateVector b = a;
    const Matrix op = expm_hermitian(build_hij(1, 2, 1.0, 0.4, 2).matrix(), 0.37);
    const int targets[2] = {3, 1};
    a.apply_local(op, targets);
    b.apply(kron_embed(op, targets, 3));
    EXPECT_LT((a.amplitudes() - b.amplitudes()).norm(), 1e-14);
}

TEST(StateVector, RejectsOversizedRegister) { EXPECT_THROW(StateVector(kMaxQubits + 1), std::invalid_argument); }
