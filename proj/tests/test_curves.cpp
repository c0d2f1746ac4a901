#include "g2ell/curves.hpp"
#include "g2ell/reduction.hpp"
#include "g2ell/sampling.hpp"

#include <gtest/gtest.h>

using namespace g2ell;

namespace {
void expect_c(cplx got, cplx want, double tol = 1e-12)
{
    EXPECT_LE(std::abs(got - want), tol * std::max(1.0, std::abs(want))) << "got " << got << " want " << want;
}
} // namespace

TEST(CurveV, LambdasForRealPair)
{
    const CurveV V = curve_v_from_alpha_beta(2.0, 3.0);
    expect_c(V.lambda2, -50.0);
    expect_c(V.lambda4, 553.0);
    expect_c(V.lambda6, -1800.0);
    expect_c(V.lambda8, 1296.0);
    expect_c(V.lambda10, 0.0);
    // M(x) vanishes at the five branch points
    for (cplx e : V.branch_points()) EXPECT_LT(std::abs(V.M2(e)), 1e-9);
}

TEST(CurveV, ForbiddenParameters)
{
    EXPECT_THROW(curve_v_from_alpha_beta(2.0, 1.0), error);
    EXPECT_THROW(curve_v_from_alpha_beta(2.0, 2.0), error);
    EXPECT_THROW(curve_v_from_alpha_beta(2.0, -2.0), error);
    EXPECT_THROW(curve_v_from_alpha_beta(0.0, 3.0), error);
    EXPECT_THROW(curve_v_from_alpha_beta(2.0, 0.5), error);
    try {
        curve_v_from_alpha_beta(2.0, 1.0);
    }
    catch (const error& e) {
        EXPECT_EQ(e.kind(), error_kind::invalid_parameters);
        EXPECT_NE(std::string(e.what()).find("beta^2"), std::string::npos);
    }
}

TEST(CurveV, EParametersRoundTrip)
{
    const auto [e1, e2] = e_from_alpha_beta(2.0, 3.0);
    expect_c(e1, -5.0);
    expect_c(e2, 1.4);
    const auto [a, b] = alpha_beta_from_e(e1, e2);
    expect_c(a * a, 4.0);
    expect_c(b * b, 9.0);
    for (const auto& np : default_test_grid()) {
        const auto [f1, f2] = e_from_alpha_beta(np.alpha, np.beta);
        const auto [x, y] = alpha_beta_from_e(f1, f2);
        expect_c(x * x, np.alpha * np.alpha, 1e-10);
        expect_c(y * y, np.beta * np.beta, 1e-10);
    }
}

TEST(EllipticTargets, RootsForRealPair)
{
    const CurveV V = curve_v_from_alpha_beta(2.0, 3.0);
    const auto [E1, E2] = elliptic_targets(V);
    expect_c(E1.c, 1.0 / 25.0);
    expect_c(E2.c, 25.0 / 49.0);
    expect_c(E1.b, 1.0);
}

TEST(EllipticTargets, CoverMapsLandOnTargets)
{
    Sampler R(7);
    for (const auto& np : default_test_grid()) {
        const CurveV V = curve_v_from_alpha_beta(np.alpha, np.beta);
        const auto [E1, E2] = elliptic_targets(V);
        for (int n = 0; n < 10; ++n) {
            const AffinePoint P = R.point_on_v(V);
            ASSERT_LT(V.residual(P), 1e-12);
            EXPECT_LT(E1.residual(phi(V, 1, P)), 1e-10);
            EXPECT_LT(E2.residual(phi(V, 2, P)), 1e-10);
        }
    }
}

TEST(EllipticTargets, PhiOfBranchPointOne)
{
    const CurveV V = curve_v_from_alpha_beta(2.0, 3.0);
    const AffinePoint S = phi(V, 1, AffinePoint::finite(1.0, 0.0));
    expect_c(S.x, 1.0 / 25.0);
    expect_c(S.y, 0.0);
    EXPECT_TRUE(phi(V, 1, base_point_O(V, 1)).infinite);
    EXPECT_TRUE(phi(V, 2, base_point_O(V, 2)).infinite);
    EXPECT_LT(V.residual(base_point_O(V, 1)), 1e-12);
    EXPECT_LT(V.residual(base_point_O(V, 2)), 1e-12);
}

TEST(EllipticTargets, PreimagesMapBack)
{
    Sampler R(11);
    for (const auto& np : default_test_grid()) {
        const CurveV V = curve_v_from_alpha_beta(np.alpha, np.beta);
        for (int i = 1; i <= 2; ++i)
            for (int n = 0; n < 5; ++n) {
                const AffinePoint S = phi(V, i, R.point_on_v(V));
                const auto [P, Q] = phi_preimage(V, i, S);
                EXPECT_LT(V.residual(P), 1e-9);
                EXPECT_LT(V.residual(Q), 1e-9);
                const AffinePoint S1 = phi(V, i, P), S2 = phi(V, i, Q);
                EXPECT_LT(std::abs(S1.x - S.x) + std::abs(S1.y - S.y), 1e-9 * std::max(1.0, std::abs(S.y)));
                EXPECT_LT(std::abs(S2.x - S.x) + std::abs(S2.y - S.y), 1e-9 * std::max(1.0, std::abs(S.y)));
            }
    }
}

TEST(Isogeny, CoefficientsForRealPair)
{
    const auto k = IsogenyCoefficients::from(curve_v_from_alpha_beta(2.0, 3.0));
    expect_c(k.a(1), -5.0);
    expect_c(k.b(1), -30.0);
    expect_c(k.a(2), 7.0);
    expect_c(k.b(2), -42.0);
    // push-forward of k_i v is 2v, and k_1 is killed by the other push-forward
    expect_c(k.a(1) * k.k(1)(0) + k.b(1) * k.k(1)(1), 2.0);
    expect_c(k.a(2) * k.k(2)(0) + k.b(2) * k.k(2)(1), 2.0);
    expect_c(k.a(2) * k.k(1)(0) + k.b(2) * k.k(1)(1), 0.0);
    expect_c(k.a(1) * k.k(2)(0) + k.b(1) * k.k(2)(1), 0.0);
}

TEST(Kappa, ValuesForRealPair)
{
    const CurveV V = curve_v_from_alpha_beta(2.0, 3.0);
    expect_c(kappa(V, 1) * kappa(V, 1), -1.0 / 24.0);
    expect_c(kappa(V, 2) * kappa(V, 2), -25.0 / 24.0);
}
