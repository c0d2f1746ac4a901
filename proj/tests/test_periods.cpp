#include "g2ell/periods.hpp"
#include "g2ell/sampling.hpp"
#include "g2ell/verify.hpp"

#include <gtest/gtest.h>

using namespace g2ell;

namespace {

double agm(double a, double b)
{
    for (int i = 0; i < 60 && std::abs(a - b) > 1e-16 * a; ++i) {
        const double m = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = m;
    }
    return a;
}

} // namespace

TEST(PeriodsG1, LemniscateMatchesAgm)
{
    // y^2 = x^3 - x, roots -1, 0, 1
    const PeriodsG1 P = periods_g1(CubicCurve(0.0, -1.0, 0.0));
    const double half = 0.5 * pi / agm(std::sqrt(2.0), 1.0);
    EXPECT_NEAR(std::abs(P.omega_p), half, 1e-13);
    EXPECT_NEAR(std::abs(P.omega_pp), half, 1e-13);
    EXPECT_NEAR(std::abs(P.tau - I), 0.0, 1e-13);
    EXPECT_LT(P.legendre_residual, 1e-13);
}

TEST(PeriodsG1, RealRootsMatchAgm)
{
    // roots 0, 1, 3: the real half period is pi / (2 AGM(sqrt(3), sqrt(2)))
    const PeriodsG1 P = periods_g1(CubicCurve(-4.0, 3.0, 0.0));
    const double half = 0.5 * pi / agm(std::sqrt(3.0), std::sqrt(2.0));
    const cplx w = P.lattice_point(1, 0) * 0.5, v = P.lattice_point(0, 1) * 0.5;
    // one of the reduced half periods, or their sum, is real with this size
    const double best = std::min({std::abs(std::abs(w) - half), std::abs(std::abs(v) - half), std::abs(std::abs(w + v) - half),
                                  std::abs(std::abs(w - v) - half)});
    EXPECT_LT(best, 1e-12);
    EXPECT_LT(P.legendre_residual, 1e-12);
}

TEST(PeriodsG2, GridCurvesSatisfyRiemannRelations)
{
    for (const auto& np : default_test_grid()) {
        const PeriodsG2 P = periods_g2(curve_v_from_alpha_beta(np.alpha, np.beta));
        EXPECT_LT(tau_asymmetry(P.tau), 1e-9) << np.name;
        EXPECT_GT(min_eig_im(P.tau), 0.0) << np.name;
        EXPECT_LT(P.legendre_residual, 1e-8) << np.name;
        // intersection form of the chosen basis is the standard symplectic one
        const Mat4i S = P.basis.transpose() * P.intersection * P.basis;
        Mat4i J = Mat4i::Zero();
        J(0, 2) = J(1, 3) = 1;
        J(2, 0) = J(3, 1) = -1;
        EXPECT_EQ(S, J) << np.name;
    }
}

TEST(PeriodsG2, RealPairValues)
{
    const PeriodsG2 P = periods_g2(curve_v_from_alpha_beta(2.0, 3.0));
    // purely imaginary tau with equal diagonal entries
    EXPECT_LT(std::abs(P.tau(0, 0).real()) + std::abs(P.tau(0, 1).real()), 1e-10);
    EXPECT_NEAR(P.tau(0, 0).imag(), P.tau(1, 1).imag(), 1e-10);
}

TEST(PeriodsG2, RejectsNearCollidingBranchPoints)
{
    EXPECT_THROW(periods_g2(curve_v_from_alpha_beta(2.0, cplx(1.0, 1e-10))), error);
}

TEST(Humbert, DiagonalTauHasDeltaFourRelation)
{
    const auto h = humbert_delta4(mat2(I, 0.0, 0.0, 2.0 * I));
    ASSERT_TRUE(h.has_value());
    EXPECT_EQ(h->delta, 4);
    EXPECT_LT(h->residual, 1e-12);
}

TEST(Humbert, GridCurvesHaveRelation)
{
    for (const auto& np : default_test_grid()) {
        const auto h = humbert_delta4(periods_g2(curve_v_from_alpha_beta(np.alpha, np.beta)).tau);
        ASSERT_TRUE(h.has_value()) << np.name;
        const auto& v = h->h;
        EXPECT_EQ(v[1] * v[1] - 4 * v[0] * v[2] - 4 * v[3] * v[4], 4) << np.name;
        EXPECT_LT(h->residual, 1e-6) << np.name;
    }
}

TEST(Humbert, RandomTauHasNoRelation)
{
    Sampler R(42);
    for (int n = 0; n < 20; ++n) EXPECT_FALSE(humbert_delta4(random_siegel_tau(R)).has_value());
}

TEST(PeriodsG2, AlternateBasisIsSymplecticAndChangesTau)
{
    const PeriodsG2 P = periods_g2(curve_v_from_alpha_beta(cplx(1.5, 0.5), cplx(0.5, -0.25)));
    const PeriodsG2 Q = periods_from_cycles(P, detail::alternate_basis(P.basis));
    EXPECT_LT(Q.legendre_residual, 1e-8);
    EXPECT_GT(min_eig_im(Q.tau), 0.0);
    EXPECT_GT((Q.tau - P.tau).norm(), 1e-3);
}
