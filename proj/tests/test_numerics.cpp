#include "g2ell/numerics.hpp"

#include <gtest/gtest.h>

using namespace g2ell;

TEST(Quadrature, ArcsineDensityIntegratesToPi)
{
    const auto v = integrate_segment([](cplx, cplx za, cplx zb) { return 1.0 / std::sqrt(za * (-zb)); },
                                     PathSegment(0.0, 1.0, true, true));
    EXPECT_NEAR(std::abs(v - pi), 0.0, 1e-12);
}

TEST(Quadrature, InverseSquareRootEndpoint)
{
    const auto v = integrate_segment([](cplx z) { return 1.0 / std::sqrt(z); }, PathSegment(0.0, 1.0, true, false));
    EXPECT_NEAR(std::abs(v - 2.0), 0.0, 1e-12);
}

TEST(Quadrature, ComplexPathPolynomial)
{
    // integral of z^2 from 0 to 1 + i is (1 + i)^3 / 3
    const cplx b{1.0, 1.0};
    const auto v = integrate_segment([](cplx z) { return z * z; }, PathSegment(0.0, b));
    EXPECT_NEAR(std::abs(v - b * b * b / 3.0), 0.0, 1e-14);
}

TEST(Quadrature, RayWithDecay)
{
    // integral over [1, inf) of z^(-2) is 1
    const auto v = integrate_ray([](cplx z) { return 1.0 / (z * z); }, 1.0, 1.0);
    EXPECT_NEAR(std::abs(v - 1.0), 0.0, 1e-12);
}

TEST(Quadrature, RejectsBadTolerance)
{
    Tolerance t;
    t.abs_tol = 0.0;
    t.rel_tol = 0.0;
    EXPECT_THROW(t.validate(), error);
}

TEST(LatticeMember, RecognizesIntegerCombination)
{
    const cplx w1{2.0, 0.0}, w2{0.3, 1.7};
    const auto m = lattice_member(3.0 * w1 - 2.0 * w2, w1, w2);
    ASSERT_TRUE(m.has_value());
    EXPECT_EQ((*m)(0), 3);
    EXPECT_EQ((*m)(1), -2);
}

TEST(LatticeMember, RejectsHalfPeriod)
{
    const cplx w1{2.0, 0.0}, w2{0.3, 1.7};
    EXPECT_FALSE(lattice_member(0.5 * w1, w1, w2).has_value());
    EXPECT_FALSE(lattice_member(w1 + 0.5 * w2, w1, w2).has_value());
}

TEST(LatticeMember, GenusTwo)
{
    Eigen::Matrix<cplx, 2, 4> cols;
    cols << cplx(1, 0), cplx(0, 0), cplx(0.2, 1.1), cplx(0.1, 0.3), cplx(0, 0), cplx(1, 0), cplx(0.1, 0.3),
        cplx(-0.4, 0.9);
    Eigen::Matrix<long long, 4, 1> m;
    m << 1, -3, 2, 5;
    Vec2 v = Vec2::Zero();
    for (int j = 0; j < 4; ++j) v += static_cast<double>(m(j)) * cols.col(j);
    const auto r = lattice_member<2>(v, cols);
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(*r, m);
    EXPECT_FALSE(lattice_member<2>(Vec2(v + 0.5 * cols.col(2)), cols).has_value());
}
