#include <gtest/gtest.h>

#include <algorithm>

#include "exft/hamiltonians.h"

using namespace exft;

namespace {

std::vector<double> sorted_eigenvalues(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST(BuildHij, ZeroCouplingIsZero) { EXPECT_LT(max_abs(build_hij(1, 2, 0.0, 0.0, 2).matrix()), 1e-15); }

TEST(BuildHij, XYTermHopsExcitation) {
    StateVector s = StateVector::from_bits("01");
    s.apply(build_hij(1, 2, 1.0, 0.0, 2).matrix());
    EXPECT_NEAR(std::abs(s[0b10] - cplx(2)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s[0b01]), 0.0, 1e-15);
}

TEST(BuildHij, HeisenbergSpectrumIsSingletTriplet) {
    const auto ev = sorted_eigenvalues(build_hij(1, 2, 1.0, 1.0, 2).matrix());
    const std::vector<double> expect{-3, 1, 1, 1};
    for (size_t k = 0; k < 4; ++k) EXPECT_NEAR(ev[k], expect[k], 1e-12);
}

TEST(BuildHij, IsHermitianOnLargerRegister) {
    EXPECT_TRUE(is_hermitian(build_hij(2, 4, 0.7, 0.3, 5).matrix()));
    EXPECT_THROW(build_hij(2, 2, 1.0, 1.0, 3), std::invalid_argument);
    EXPECT_THROW(build_hij(1, 4, 1.0, 1.0, 3), std::out_of_range);
}

TEST(BuildH0, TwoQubitSpectrum) {
    const auto ev = sorted_eigenvalues(build_h0(GlobalField({1.0, 2.0})).matrix());
    const std::vector<double> expect{-1.5, -0.5, 0.5, 1.5};
    for (size_t k = 0; k < 4; ++k) EXPECT_NEAR(ev[k], expect[k], 1e-12);
}

TEST(GlobalField, RejectsDegenerateFrequencies) {
    EXPECT_THROW(GlobalField({0.0, 0.0, 0.0}), std::invalid_argument);
    EXPECT_THROW(GlobalField({1.0, 2.0, 1.0}), std::invalid_argument);
    EXPECT_NO_THROW(GlobalField({1.0, 1.37}));
}

TEST(Couplings, ModelConstraints) {
    EXPECT_THROW(validate_coupling_for_model(ModelKind::Heisenberg, 1.0, 0.5), std::invalid_argument);
    EXPECT_THROW(validate_coupling_for_model(ModelKind::XY, 1.0, 0.5), std::invalid_argument);
    EXPECT_THROW(validate_coupling_for_model(ModelKind::XXZ, 1.0, 1.0), std::invalid_argument);
    EXPECT_THROW(validate_coupling_for_model(ModelKind::XXZ, 1.0, 0.0), std::invalid_argument);
    EXPECT_NO_THROW(validate_coupling_for_model(ModelKind::XXZ, 1.0, 0.6));
}

TEST(Couplings, LongRangeNeedsOptIn) {
    CouplingGraph g(4);
    EXPECT_NO_THROW(g.add(ModelKind::XY, 1, 3, 1.0, 0.0));
    EXPECT_THROW(g.add(ModelKind::XY, 1, 4, 1.0, 0.0), std::invalid_argument);
    CouplingGraph wide(4, true);
    EXPECT_NO_THROW(wide.add(ModelKind::XY, 1, 4, 1.0, 0.0));
    EXPECT_TRUE(wide.find(4, 1).has_value());
}

TEST(ModelNames, RoundTrip) {
    for (ModelKind m : {ModelKind::XY, ModelKind::XXZ, ModelKind::Heisenberg}) EXPECT_EQ(parse_model(to_string(m)), m);
    EXPECT_EQ(parse_model("Heisenberg"), ModelKind::Heisenberg);
    EXPECT_THROW(parse_model("ising"), std::invalid_argument);
}

TEST(ExchangePropagator, MatchesDenseExponential) {
    const Matrix local = exchange_propagator(0.9, 0.4, 0.61);
    const Matrix dense = expm_hermitian(build_hij(1, 2, 0.9, 0.4, 2).matrix(), 0.61);
    EXPECT_LT(max_abs(local - dense), 1e-13);
}
