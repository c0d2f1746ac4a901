#pragma once

// Theta functions with half-integer characteristics in dimension 1 and 2,
// with derivatives up to third order in z.
//
//   theta[d', d''](z, tau) = sum_n exp(pi i k^T tau k + 2 pi i k^T (z + d'')),  k = n + d'
//
// Terms k and -k are summed together. Since 4 k.d'' is an integer the phase
// exp(2 pi i k.d'') is a power of i, so odd characteristics vanish exactly at 0.

#include "g2ell/core.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace g2ell {

template <int G>
struct Characteristic {
    std::array<double, G> top{};    // d', entries 0 or 1/2
    std::array<double, G> bottom{}; // d''

    bool odd() const
    {
        double s = 0.0;
        for (int i = 0; i < G; ++i) s += 4.0 * top[static_cast<std::size_t>(i)] * bottom[static_cast<std::size_t>(i)];
        return static_cast<long long>(std::llround(s)) % 2 != 0;
    }
};

template <int G>
struct ThetaDerivs {
    using Vec = Eigen::Matrix<cplx, G, 1>;
    using Mat = Eigen::Matrix<cplx, G, G>;
    cplx value{};
    Vec grad = Vec::Zero();
    Mat hess = Mat::Zero();
    std::array<Mat, G> third{}; // third[a](b, c)
    double term_scale = 0.0;    // sum of |terms| in the value

    ThetaDerivs()
    {
        for (auto& m : third) m.setZero();
    }
};

struct ThetaOptions {
    double tol = 1e-17;
    int order = 3;
};

namespace detail {

inline cplx ipow(long long j)
{
    switch (((j % 4) + 4) % 4) {
    case 0: return 1.0;
    case 1: return I;
    case 2: return -1.0;
    default: return -I;
    }
}

} // namespace detail

template <int G>
ThetaDerivs<G> theta(const Characteristic<G>& ch, const Eigen::Matrix<cplx, G, 1>& z,
                     const Eigen::Matrix<cplx, G, G>& tau, const ThetaOptions& opt = {})
{
    using RMat = Eigen::Matrix<double, G, G>;
    using RVec = Eigen::Matrix<double, G, 1>;
    const RMat Y = 0.5 * (tau.imag() + tau.imag().transpose());
    const Eigen::LLT<RMat> llt(Y);
    if (llt.info() != Eigen::Success || !z.allFinite() || !tau.allFinite())
        throw error(error_kind::invalid_parameters, "theta needs finite z and positive definite Im tau");
    const RMat Yinv = Y.inverse();
    const RVec c = Yinv * z.imag();
    // exp(-pi d^2) below tol, plus room for the cubic prefactor
    const double RY = std::sqrt(std::log(1.0 / opt.tol) / pi) + 1.5;

    std::array<long long, G> lo{}, hi{};
    for (int i = 0; i < G; ++i) {
        const double r = RY * std::sqrt(Yinv(i, i));
        const double d = ch.top[static_cast<std::size_t>(i)];
        const double ci = std::abs(c(i));
        lo[static_cast<std::size_t>(i)] = static_cast<long long>(std::floor(-ci - r - d)) - 1;
        hi[static_cast<std::size_t>(i)] = static_cast<long long>(std::ceil(ci + r - d)) + 1;
    }

    ThetaDerivs<G> out;
    const cplx tpi = 2.0 * pi * I;
    std::array<long long, G> n = lo;
    for (;;) {
        Eigen::Matrix<double, G, 1> k;
        for (int i = 0; i < G; ++i) k(i) = static_cast<double>(n[static_cast<std::size_t>(i)]) + ch.top[static_cast<std::size_t>(i)];
        // first nonzero entry decides the half space
        int sgn = 0;
        for (int i = 0; i < G && sgn == 0; ++i) sgn = k(i) > 0 ? 1 : (k(i) < 0 ? -1 : 0);
        if (sgn == 0) {
            out.value += 1.0;
            out.term_scale += 1.0;
        }
        else if (sgn > 0) {
            const Eigen::Matrix<cplx, G, 1> kc = k.template cast<cplx>();
            const cplx quad = I * pi * (kc.transpose() * tau * kc)(0, 0);
            const cplx x = tpi * (kc.transpose() * z)(0, 0);
            double jd = 0.0;
            for (int i = 0; i < G; ++i) jd += 4.0 * k(i) * ch.bottom[static_cast<std::size_t>(i)];
            const long long j = std::llround(jd);
            const cplx tp = std::exp(quad + x), tm = std::exp(quad - x);
            const cplx ph = detail::ipow(j);
            const double s = (j % 2 == 0) ? 1.0 : -1.0;
            const cplx even = ph * (tp + s * tm), oddv = ph * (tp - s * tm);
            out.value += even;
            out.term_scale += std::abs(tp) + std::abs(tm);
            if (opt.order >= 1) out.grad += tpi * kc * oddv;
            if (opt.order >= 2) out.hess += tpi * tpi * (kc * kc.transpose()) * even;
            if (opt.order >= 3)
                for (int a = 0; a < G; ++a) out.third[static_cast<std::size_t>(a)] += tpi * tpi * tpi * kc(a) * (kc * kc.transpose()) * oddv;
        }
        int i = 0;
        while (i < G) {
            auto& ni = n[static_cast<std::size_t>(i)];
            if (++ni <= hi[static_cast<std::size_t>(i)]) break;
            ni = lo[static_cast<std::size_t>(i)];
            ++i;
        }
        if (i == G) break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// genus-1 conveniences: theta_ab(z) = theta[a/2, b/2](z, tau)

inline ThetaDerivs<1> theta1d(int a, int b, cplx z, cplx tau, const ThetaOptions& opt = {})
{
    Characteristic<1> ch;
    ch.top[0] = 0.5 * a;
    ch.bottom[0] = 0.5 * b;
    Eigen::Matrix<cplx, 1, 1> zz, tt;
    zz << z;
    tt << tau;
    return theta<1>(ch, zz, tt, opt);
}

inline cplx theta00(cplx z, cplx tau) { return theta1d(0, 0, z, tau, {1e-17, 0}).value; }
inline cplx theta01(cplx z, cplx tau) { return theta1d(0, 1, z, tau, {1e-17, 0}).value; }
inline cplx theta10(cplx z, cplx tau) { return theta1d(1, 0, z, tau, {1e-17, 0}).value; }
inline cplx theta11(cplx z, cplx tau) { return theta1d(1, 1, z, tau, {1e-17, 0}).value; }

// The 16 genus-2 characteristics; odd ones are listed first.
inline std::array<Characteristic<2>, 16> all_characteristics_g2()
{
    std::array<Characteristic<2>, 16> out{};
    std::size_t odd_pos = 0, even_pos = 6;
    for (int m = 0; m < 16; ++m) {
        Characteristic<2> ch;
        ch.top = {0.5 * (m & 1), 0.5 * ((m >> 1) & 1)};
        ch.bottom = {0.5 * ((m >> 2) & 1), 0.5 * ((m >> 3) & 1)};
        out[ch.odd() ? odd_pos++ : even_pos++] = ch;
    }
    return out;
}

} // namespace g2ell
