#include "g2ell/reduction.hpp"
#include "g2ell/sampling.hpp"
#include "g2ell/sigma.hpp"

#include <gtest/gtest.h>

using namespace g2ell;

namespace {
double rel(cplx a, cplx b) { return rel_residual(a, b); }
} // namespace

TEST(SigmaG1, LemniscateLaurentExpansion)
{
    const CubicCurve E(0.0, -1.0, 0.0);
    const SigmaG1 S(E, periods_g1(E));
    // wp(u) = 1/u^2 - lambda2/3 + O(u^2), here lambda2 = 0
    const double u = 1e-3;
    EXPECT_LT(std::abs(S.wp(u) - 1.0 / (u * u)), 1e-5);
    EXPECT_LT(std::abs(S.sigma(u) / u - 1.0), 1e-9);
}

TEST(SigmaG1, DifferentialEquationAndHalfPeriods)
{
    const CubicCurve E(cplx(0.3, -0.2), cplx(-1.1, 0.4), cplx(0.25, 0.1));
    const SigmaG1 S(E, periods_g1(E));
    Sampler R(1);
    for (int n = 0; n < 10; ++n) {
        const cplx u = R.complex_box(0.8);
        const auto [p, dp] = S.derivs(u);
        EXPECT_LT(rel(dp * dp, 4.0 * E(p)), 1e-11);
        EXPECT_LT(rel(S.sigma(-u), -S.sigma(u)), 1e-12);
    }
    // the three half periods map to the three roots
    const auto r = E.roots();
    for (int j = 1; j <= 3; ++j) {
        const cplx p = S.wp(S.half_period(j));
        double best = 1e300;
        for (cplx e : r) best = std::min(best, std::abs(p - e));
        EXPECT_LT(best, 1e-10);
    }
}

TEST(SigmaG1, AlSquaresAndPeriodicity)
{
    const CubicCurve E(-1.5, 0.5, 0.0); // roots 0, 0.5, 1
    const PeriodsG1 P = periods_g1(E);
    const SigmaG1 S(E, P);
    Sampler R(2);
    for (int n = 0; n < 10; ++n) {
        const cplx u = R.complex_box(0.5);
        for (int j = 1; j <= 3; ++j) {
            const cplx a = S.al(j, u);
            EXPECT_LT(rel(a * a, S.wp(u) - S.wp(S.half_period(j))), 1e-10);
        }
        EXPECT_LT(rel(S.wp(u + P.lattice_point(1, 0)), S.wp(u)), 1e-10);
        EXPECT_LT(rel(S.wp(u + P.lattice_point(0, 1)), S.wp(u)), 1e-10);
    }
}

TEST(JacobiElliptic, PythagoreanIdentitiesAndDerivative)
{
    const JacobiElliptic J(cplx(0.1, 1.2));
    const cplx k = J.modulus();
    Sampler R(3);
    for (int n = 0; n < 10; ++n) {
        const cplx u = R.complex_box(0.6);
        const auto s = J.sn_cn_dn(u);
        EXPECT_LT(std::abs(s[0] * s[0] + s[1] * s[1] - 1.0), 1e-12);
        EXPECT_LT(std::abs(s[2] * s[2] + k * k * s[0] * s[0] - 1.0), 1e-12);
        const double h = 1e-5;
        const auto p = J.sn_cn_dn(u + h), m = J.sn_cn_dn(u - h);
        EXPECT_LT(std::abs((p[0] - m[0]) / (2 * h) - s[1] * s[2]), 1e-8);
    }
    const auto z = J.sn_cn_dn(0.0);
    EXPECT_LT(std::abs(z[0]), 1e-15);
    EXPECT_LT(std::abs(z[1] - 1.0), 1e-15);
}

TEST(JacobiElliptic, RealModulusSmallArgument)
{
    // sn(u) = u - (1 + k^2) u^3 / 6 + O(u^5)
    const JacobiElliptic J(cplx(0.0, 0.9));
    const cplx k = J.modulus();
    const double u = 1e-3;
    EXPECT_LT(std::abs(J.sn_cn_dn(u)[0] - (u - (1.0 + k * k) * u * u * u / 6.0)), 1e-15);
}

class SigmaG2Grid : public ::testing::TestWithParam<int> {
protected:
    static const ReductionContext& ctx(int i)
    {
        static std::vector<std::unique_ptr<ReductionContext>> cache(5);
        const auto grid = default_test_grid();
        auto& c = cache[static_cast<std::size_t>(i)];
        if (!c)
            c = std::make_unique<ReductionContext>(curve_v_from_alpha_beta(grid[static_cast<std::size_t>(i)].alpha,
                                                                          grid[static_cast<std::size_t>(i)].beta));
        return *c;
    }
};

TEST_P(SigmaG2Grid, CharacteristicIsOddAndVanishesAtInfinityDivisor)
{
    const SigmaG2& S = ctx(GetParam()).sigma();
    EXPECT_TRUE(S.delta().odd());
    EXPECT_LT(std::abs(S.sigma(Vec2::Zero())), 1e-15);
    EXPECT_LT(S.calibration_residual(), 1e-6);
    EXPECT_LT(std::abs(S.linear_u1_coefficient()), 1e-6);
}

TEST_P(SigmaG2Grid, OddnessEvennessAndPeriodicity)
{
    const SigmaG2& S = ctx(GetParam()).sigma();
    Sampler R(77);
    for (int n = 0; n < 5; ++n) {
        const Vec2 u = R.jacobian_point(S);
        EXPECT_LT(rel(S.sigma(-u), -S.sigma(u)), 1e-10);
        const WpValues a = S.wp(u);
        for (int m = 0; m < 4; ++m) {
            Vec4i mv = Vec4i::Zero();
            mv(m) = 1;
            const WpValues b = S.wp(u + S.lattice_vector(mv));
            EXPECT_LT(rel(a.p11, b.p11) + rel(a.p13, b.p13) + rel(a.p33, b.p33) + rel(a.p333, b.p333), 1e-8);
        }
    }
}

TEST_P(SigmaG2Grid, SecondDerivativesMatchFiniteDifferences)
{
    const SigmaG2& S = ctx(GetParam()).sigma();
    Sampler R(78);
    const Vec2 u = R.jacobian_point(S, 1e-2);
    const WpValues w = S.wp(u);
    // d/du1 of p11 is p111, d/du3 of p13 is p133; Richardson-extrapolated central differences
    auto deriv = [&](auto get, int axis) {
        auto central = [&](double h) {
            const Vec2 e = axis == 0 ? vec2(h, 0.0) : vec2(0.0, h);
            return (get(S.wp(Vec2(u + e))) - get(S.wp(Vec2(u - e)))) / (2 * h);
        };
        return (4.0 * central(1e-5) - central(2e-5)) / 3.0;
    };
    const cplx d111 = deriv([](const WpValues& x) { return x.p11; }, 0);
    const cplx d133 = deriv([](const WpValues& x) { return x.p13; }, 1);
    EXPECT_LT(rel(d111, w.p111), 1e-6);
    EXPECT_LT(rel(d133, w.p133), 1e-6);
}

TEST_P(SigmaG2Grid, AbelMapOfPointAndItsNegativeCancel)
{
    const SigmaG2& S = ctx(GetParam()).sigma();
    Sampler R(79);
    for (int n = 0; n < 5; ++n) {
        const AffinePoint P = R.point_on_v(S.curve());
        const Vec2 s = S.abel_from_infinity(P) + S.abel_from_infinity(P.negated());
        EXPECT_TRUE(S.lattice_coordinates(s).has_value());
    }
}

INSTANTIATE_TEST_SUITE_P(Grid, SigmaG2Grid, ::testing::Range(0, 5));

TEST(SigmaG2, ThetaDivisorGuard)
{
    const ReductionContext C(curve_v_from_alpha_beta(2.0, 3.0));
    // a single Abel image lies on the theta divisor
    const Vec2 u = C.sigma().abel_from_infinity(AffinePoint::finite(cplx(0.4, 0.3), csqrt(C.curve().M2(cplx(0.4, 0.3)))));
    EXPECT_LT(C.sigma().divisor_distance(u), 1e-10);
    EXPECT_THROW(C.wp(u), error);
}
