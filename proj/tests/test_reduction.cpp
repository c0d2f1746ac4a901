#include "g2ell/verify.hpp"

#include <gtest/gtest.h>

using namespace g2ell;

namespace {

const ReductionContext& real_pair()
{
    static const ReductionContext C(curve_v_from_alpha_beta(2.0, 3.0));
    return C;
}

const ReductionContext& generic_pair()
{
    static const ReductionContext C(curve_v_from_alpha_beta(cplx(1.5, 0.5), cplx(0.5, -0.25)));
    return C;
}

void expect_all_pass(const Report& r)
{
    for (const auto& c : r.checks)
        EXPECT_TRUE(c.pass()) << c.suite << ": " << c.name << " max " << c.max_residual << " threshold " << c.threshold;
}

} // namespace

TEST(Sampler, Deterministic)
{
    Sampler a(42), b(42), c(43);
    for (int i = 0; i < 10; ++i) {
        const double x = a.uniform();
        EXPECT_EQ(x, b.uniform());
        EXPECT_GE(x, 0.0);
        EXPECT_LT(x, 1.0);
    }
    EXPECT_NE(Sampler(42).uniform(), c.uniform());
}

TEST(Sampler, PointsLieOnCurveWithinRadius)
{
    Sampler R(5);
    const CurveV& V = real_pair().curve();
    for (int i = 0; i < 20; ++i) {
        const AffinePoint P = R.point_on_v(V);
        EXPECT_LE(std::abs(P.x), 10.0);
        EXPECT_LT(V.residual(P), 1e-12);
    }
}

TEST(FundamentalRelations, HoldOnRealAndGenericCurves)
{
    VerifyConfig cfg;
    expect_all_pass(suite_fundamental(real_pair(), cfg));
    expect_all_pass(suite_fundamental(generic_pair(), cfg));
}

TEST(FundamentalRelations, PerturbedLambda4Fails)
{
    VerifyConfig cfg;
    cfg.lambda4_perturbation = 1e-3;
    EXPECT_FALSE(suite_fundamental(real_pair(), cfg).pass());
    EXPECT_FALSE(suite_fundamental(generic_pair(), cfg).pass());
}

TEST(FunctionsF, FormulaEqualsPushForward)
{
    VerifyConfig cfg;
    expect_all_pass(suite_f_formulas(real_pair(), cfg));
    expect_all_pass(suite_f_formulas(generic_pair(), cfg));
}

TEST(Restrictions, ValuesOnEllipticLines)
{
    VerifyConfig cfg;
    cfg.samples = 10;
    expect_all_pass(suite_restrictions(real_pair(), cfg));
    expect_all_pass(suite_restrictions(generic_pair(), cfg));
}

TEST(Restrictions, P13IsConstantOnLines)
{
    const auto& C = real_pair();
    const cplx ab2 = C.curve().ab() * C.curve().ab();
    for (cplx v : {cplx(0.2, 0.1), cplx(-0.05, 0.3)})
        for (int i = 1; i <= 2; ++i) {
            const cplx vv = v * C.E(i).periods.omega_p;
            EXPECT_LT(std::abs(C.wp(C.coefficients().k(i) * vv).p13 + ab2), 1e-8);
        }
}

TEST(Addition, KvAndQFunctionForms)
{
    VerifyConfig cfg;
    cfg.samples = 10;
    expect_all_pass(suite_addition(real_pair(), cfg));
    expect_all_pass(suite_addition(generic_pair(), cfg));
}

TEST(Addition, PerturbedCoefficientsBreakQFunctionForm)
{
    const auto& C = real_pair();
    CurveV L = C.curve();
    L.lambda4 += 0.5;
    Sampler R(3);
    const Vec2 u = R.jacobian_point(C.sigma()), v = R.jacobian_point(C.sigma());
    const auto g = ReductionContext::addition(L, C.wp(u), C.wp(v));
    EXPECT_GT(rel_residual(g[0], C.wp(u + v).p11), 1e-6);
}

TEST(JacobiInversion, RoundTrip)
{
    VerifyConfig cfg;
    expect_all_pass(suite_inversion(real_pair(), cfg));
    expect_all_pass(suite_inversion(generic_pair(), cfg));
}

TEST(Kummer, CoordinatesAndBridges)
{
    VerifyConfig cfg;
    cfg.samples = 10;
    for (const auto* C : {&real_pair(), &generic_pair()}) {
        const Report r = suite_kummer(*C, cfg);
        for (const auto& c : r.checks) {
            // the al-product display is checked as printed and reported by the acceptance run
            if (c.name == "al products equal the displayed rational functions of p_jk") continue;
            EXPECT_TRUE(c.pass()) << c.name << " max " << c.max_residual;
        }
    }
}

TEST(Kummer, AlProductsDifferFromDisplayByKappaFactor)
{
    const auto& C = generic_pair();
    const cplx kk = C.kappa_value(1) * C.kappa_value(2);
    Sampler R(8);
    for (int n = 0; n < 5; ++n) {
        const Vec2 u = R.jacobian_point(C.sigma());
        const auto A = C.al_products(u);
        const auto D = C.al_from_wp(C.wp(u));
        for (std::size_t j = 0; j < 3; ++j) EXPECT_LT(rel_residual(A[j] * kk * kk, D[j]), 1e-9);
    }
}

TEST(KdV, ResidualsSmall)
{
    VerifyConfig cfg;
    cfg.samples = 5;
    expect_all_pass(suite_kdv(real_pair(), cfg));
    expect_all_pass(suite_kdv(generic_pair(), cfg));
}

TEST(KdV, MixedDerivativeResidualIsNotVacuous)
{
    // both sides of dF/du3 = dG/du1 are of order one or larger at this point
    Sampler R(4);
    const auto& C = generic_pair();
    Vec2 u;
    do u = R.jacobian_point(C.sigma());
    while (C.sigma().divisor_distance(u) < 1e-2);
    const auto k = C.kdv_residuals(u);
    EXPECT_GT(k.scale3, 1.0);
    EXPECT_LT(k.rel3(), 1e-5);
}

TEST(Suites, UnknownSuiteAndBadSamplesRejected)
{
    VerifyConfig cfg;
    EXPECT_THROW(run_suite("nope", real_pair(), cfg), error);
    cfg.samples = 0;
    EXPECT_THROW(run_suite("fundamental", real_pair(), cfg), error);
}
