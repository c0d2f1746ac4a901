#include "g2ell/theta.hpp"
#include "g2ell/sampling.hpp"

#include <gtest/gtest.h>

using namespace g2ell;

namespace {

// plain summation over |n| <= N without any pairing
cplx slow_theta1(double a, double b, cplx z, cplx tau, int N = 60)
{
    cplx s = 0.0;
    for (int n = -N; n <= N; ++n) {
        const double k = n + a;
        s += std::exp(I * pi * k * k * tau + 2.0 * pi * I * k * (z + b));
    }
    return s;
}

cplx slow_theta2(const Characteristic<2>& ch, const Vec2& z, const Mat2& tau, int N = 12)
{
    cplx s = 0.0;
    for (int n1 = -N; n1 <= N; ++n1)
        for (int n2 = -N; n2 <= N; ++n2) {
            Vec2 k;
            k << n1 + ch.top[0], n2 + ch.top[1];
            Vec2 zb;
            zb << z(0) + ch.bottom[0], z(1) + ch.bottom[1];
            s += std::exp(I * pi * (k.transpose() * tau * k)(0, 0) + 2.0 * pi * I * (k.transpose() * zb)(0, 0));
        }
    return s;
}

} // namespace

TEST(Theta, NullValueAtI)
{
    EXPECT_NEAR(std::abs(theta00(0.0, I) - 1.0864348112133080), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(theta00(0.0, I) - slow_theta1(0, 0, 0.0, I)), 0.0, 1e-15);
}

TEST(Theta, MatchesSlowSumAllCharacteristics)
{
    Sampler R(3);
    for (int n = 0; n < 10; ++n) {
        const cplx tau{R.uniform(-0.5, 0.5), R.uniform(0.6, 2.0)};
        const cplx z = R.complex_box(0.7);
        for (int a = 0; a <= 1; ++a)
            for (int b = 0; b <= 1; ++b) {
                const cplx fast = theta1d(a, b, z, tau).value, slow = slow_theta1(0.5 * a, 0.5 * b, z, tau);
                EXPECT_LT(std::abs(fast - slow), 1e-13 * std::max(1.0, std::abs(slow)));
            }
    }
}

TEST(Theta, JacobiQuarticIdentity)
{
    Sampler R(5);
    for (int n = 0; n < 10; ++n) {
        const cplx tau{R.uniform(-0.5, 0.5), R.uniform(0.5, 2.0)};
        const cplx a = theta00(0.0, tau), b = theta01(0.0, tau), c = theta10(0.0, tau);
        EXPECT_LT(std::abs(std::pow(a, 4) - std::pow(b, 4) - std::pow(c, 4)), 1e-13 * std::abs(std::pow(a, 4)));
    }
}

TEST(Theta, OddCharacteristicsVanishAtZero)
{
    const Mat2 tau = mat2(cplx(0.1, 1.3), cplx(0.2, 0.4), cplx(0.2, 0.4), cplx(-0.3, 1.1));
    const auto chars = all_characteristics_g2();
    for (std::size_t c = 0; c < 16; ++c) {
        const auto t = theta<2>(chars[c], Vec2::Zero(), tau);
        if (c < 6) {
            EXPECT_TRUE(chars[c].odd());
            EXPECT_EQ(std::abs(t.value), 0.0);
            EXPECT_GT(t.grad.norm(), 1e-3);
        }
        else {
            EXPECT_FALSE(chars[c].odd());
            EXPECT_GT(std::abs(t.value), 1e-3);
        }
    }
}

TEST(Theta, GenusTwoMatchesSlowSum)
{
    Sampler R(9);
    const Mat2 tau = mat2(cplx(0.1, 1.3), cplx(0.2, 0.4), cplx(0.2, 0.4), cplx(-0.3, 1.1));
    for (const auto& ch : all_characteristics_g2()) {
        const Vec2 z = vec2(R.complex_box(0.5), R.complex_box(0.5));
        const cplx slow = slow_theta2(ch, z, tau);
        EXPECT_LT(std::abs(theta<2>(ch, z, tau).value - slow), 1e-13 * std::max(1.0, std::abs(slow)));
    }
}

TEST(Theta, DiagonalTauFactorizes)
{
    const cplx t1{0.2, 1.1}, t2{-0.1, 0.8};
    const Mat2 tau = mat2(t1, 0.0, 0.0, t2);
    const Vec2 z = vec2(cplx(0.13, -0.2), cplx(-0.31, 0.07));
    for (const auto& ch : all_characteristics_g2()) {
        const cplx g2 = theta<2>(ch, z, tau).value;
        const cplx g1 = theta1d(static_cast<int>(2 * ch.top[0]), static_cast<int>(2 * ch.bottom[0]), z(0), t1).value *
                        theta1d(static_cast<int>(2 * ch.top[1]), static_cast<int>(2 * ch.bottom[1]), z(1), t2).value;
        EXPECT_LT(std::abs(g2 - g1), 1e-14 * std::max(1.0, std::abs(g1)));
    }
}

TEST(Theta, DerivativesMatchFiniteDifferences)
{
    const Mat2 tau = mat2(cplx(0.1, 1.3), cplx(0.2, 0.4), cplx(0.2, 0.4), cplx(-0.3, 1.1));
    const Vec2 z = vec2(cplx(0.21, 0.1), cplx(-0.17, 0.05));
    const double h = 1e-4;
    for (const auto& ch : all_characteristics_g2()) {
        const auto t = theta<2>(ch, z, tau);
        for (int a = 0; a < 2; ++a) {
            Vec2 e = Vec2::Zero();
            e(a) = h;
            const auto p = theta<2>(ch, Vec2(z + e), tau), m = theta<2>(ch, Vec2(z - e), tau);
            const double s = std::max(1.0, t.grad.norm());
            EXPECT_LT(std::abs((p.value - m.value) / (2 * h) - t.grad(a)), 1e-6 * s);
            EXPECT_LT(((p.grad - m.grad) / (2 * h) - t.hess.col(a)).norm(), 1e-5 * std::max(1.0, t.hess.norm()));
            EXPECT_LT(((p.hess - m.hess) / (2 * h) - t.third[static_cast<std::size_t>(a)]).norm(),
                      1e-4 * std::max(1.0, t.third[static_cast<std::size_t>(a)].norm()));
        }
    }
}

TEST(Theta, RejectsNonPositiveImaginaryPart)
{
    const Mat2 tau = mat2(cplx(0.0, 1.0), 0.0, 0.0, cplx(0.0, -1.0));
    EXPECT_THROW(theta<2>(all_characteristics_g2()[6], Vec2::Zero(), tau), error);
}
