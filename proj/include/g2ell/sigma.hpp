#pragma once

// Sigma functions from theta, their log-derivatives, al functions and the
// Jacobi sn/cn/dn triple.

#include "g2ell/core.hpp"
#include "g2ell/curves.hpp"
#include "g2ell/periods.hpp"
#include "g2ell/theta.hpp"

#include <array>
#include <optional>
#include <string>

namespace g2ell {

// Kleinian functions at one point. Indices follow the weights 1 and 3.
struct WpValues {
    cplx p11, p13, p33;
    cplx p111, p113, p133, p333;

    cplx get(int j, int k) const;
    cplx get(int j, int k, int l) const;
};

namespace detail {

inline int wp_index(int j)
{
    if (j == 1) return 0;
    if (j == 3) return 1;
    throw error(error_kind::invalid_parameters, "index must be 1 or 3");
}

inline ThetaDerivs<2> theta_at(const Characteristic<2>& ch, const Vec2& z, const Mat2& tau, int order)
{
    return theta<2>(ch, z, tau, ThetaOptions{1e-17, order});
}

} // namespace detail

inline cplx WpValues::get(int j, int k) const
{
    const int s = detail::wp_index(j) + detail::wp_index(k);
    return s == 0 ? p11 : (s == 1 ? p13 : p33);
}

inline cplx WpValues::get(int j, int k, int l) const
{
    const int s = detail::wp_index(j) + detail::wp_index(k) + detail::wp_index(l);
    switch (s) {
    case 0: return p111;
    case 1: return p113;
    case 2: return p133;
    default: return p333;
    }
}

struct SigmaOptions {
    double divisor_threshold = 1e-10; // |theta| / sum|terms| below this is a zero
    double calibration_tol = 1e-6;
};

class SigmaG2 {
public:
    SigmaG2(const CurveV& V, const PeriodsG2& P, const Tolerance& tol = {}, const SigmaOptions& opt = {})
        : V_(V), P_(P), opt_(opt), abel_(g2_holomorphic(V), tol)
    {
        M_ = (2.0 * P_.omega_p).inverse();
        const Mat2 H = P_.eta_p * P_.omega_p.inverse();
        H_ = 0.5 * (H + H.transpose());
        detect_characteristic();
        calibrate();
    }

    const CurveV& curve() const { return V_; }
    const PeriodsG2& periods() const { return P_; }
    const AbelMap<2>& abel() const { return abel_; }
    const Characteristic<2>& delta() const { return delta_; }
    cplx epsilon() const { return eps_; }
    // |sigma(t e3)/(-t) - 1| of the Richardson limit, and the u1 coefficient of
    // the linear part (should vanish)
    double calibration_residual() const { return calib_residual_; }
    cplx linear_u1_coefficient() const { return lin_u1_; }
    double divisor_threshold() const { return opt_.divisor_threshold; }

    Vec2 abel_from_infinity(const AffinePoint& Q) const
    {
        const auto a = abel_.from_infinity(Q);
        return vec2(a[0], a[1]);
    }

    Vec2 abel(const AffinePoint& Q, const AffinePoint& base) const
    {
        return abel_from_infinity(Q) - abel_from_infinity(base);
    }

    Vec2 lattice_vector(const Vec4i& m) const { return P_.lattice_point(m); }

    std::optional<Vec4i> lattice_coordinates(const Vec2& v, double tol = 1e-6) const
    {
        return lattice_member<2>(v, P_.lattice_columns(), tol, tol);
    }

    // Representative of u modulo the lattice with z = (2w')^-1 u near the origin cell.
    Vec2 reduce(const Vec2& u) const
    {
        const Vec2 z = M_ * u;
        const Eigen::Matrix2d Y = P_.tau.imag();
        const Eigen::Vector2d n = (Y.inverse() * z.imag()).array().round();
        const Vec2 zt = z - P_.tau * n.cast<cplx>();
        const Eigen::Vector2d m = zt.real().array().round();
        return u - 2.0 * P_.omega_p * m.cast<cplx>() - 2.0 * P_.omega_pp * n.cast<cplx>();
    }

    cplx sigma(const Vec2& u) const
    {
        const auto t = detail::theta_at(delta_, M_ * u, P_.tau, 0);
        return eps_ * std::exp(0.5 * (u.transpose() * H_ * u)(0, 0)) * t.value;
    }

    // Relative size of sigma at u, 0 on the theta divisor.
    double divisor_distance(const Vec2& u) const
    {
        const auto t = detail::theta_at(delta_, M_ * reduce(u), P_.tau, 0);
        return std::abs(t.value) / t.term_scale;
    }

    WpValues wp(const Vec2& u) const
    {
        const auto t = detail::theta_at(delta_, M_ * reduce(u), P_.tau, 3);
        if (!(std::abs(t.value) > opt_.divisor_threshold * t.term_scale))
            throw error(error_kind::on_theta_divisor, "point lies on the theta divisor");
        const cplx th = t.value;
        // derivatives of log theta in z
        Eigen::Vector2cd g = t.grad / th;
        Mat2 h2 = t.hess / th - g * g.transpose();
        std::array<Mat2, 2> h3;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c)
                    h3[static_cast<std::size_t>(a)](b, c) =
                        t.third[static_cast<std::size_t>(a)](b, c) / th -
                        (t.hess(a, b) * g(c) + t.hess(a, c) * g(b) + t.hess(b, c) * g(a)) / th + 2.0 * g(a) * g(b) * g(c);
        const Mat2 W2 = -H_ - M_.transpose() * h2 * M_;
        auto third = [&](int j, int k, int l) {
            cplx s = 0.0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    for (int c = 0; c < 2; ++c)
                        s += M_(a, j) * M_(b, k) * M_(c, l) * h3[static_cast<std::size_t>(a)](b, c);
            return -s;
        };
        WpValues w;
        w.p11 = W2(0, 0);
        w.p13 = 0.5 * (W2(0, 1) + W2(1, 0));
        w.p33 = W2(1, 1);
        w.p111 = third(0, 0, 0);
        w.p113 = third(0, 0, 1);
        w.p133 = third(0, 1, 1);
        w.p333 = third(1, 1, 1);
        return w;
    }

    // Predicted ratio sigma(u + 2w'm1 + 2w''m2) / sigma(u).
    cplx quasi_period_factor(const Vec2& u, const Vec4i& m) const
    {
        const Eigen::Vector2cd m1 = m.head<2>().cast<double>().cast<cplx>(), m2 = m.tail<2>().cast<double>().cast<cplx>();
        const Vec2 Om = P_.omega_p * m1 + P_.omega_pp * m2;
        const Vec2 Et = P_.eta_p * m1 + P_.eta_pp * m2;
        double e = 0.0;
        for (int i = 0; i < 2; ++i)
            e += 2.0 * (delta_.top[static_cast<std::size_t>(i)] * static_cast<double>(m(i)) -
                        delta_.bottom[static_cast<std::size_t>(i)] * static_cast<double>(m(2 + i)));
        e += static_cast<double>(m(0) * m(2) + m(1) * m(3));
        const double sign = (std::llround(e) % 2 == 0) ? 1.0 : -1.0;
        return sign * std::exp(2.0 * (Et.transpose() * (u + Om))(0, 0));
    }

private:
    void detect_characteristic()
    {
        const std::array<cplx, 3> xs{cplx(0.37, 0.21), cplx(-1.3, 0.6), cplx(2.45, -1.15)};
        std::array<Vec2, 3> zs;
        for (std::size_t i = 0; i < xs.size(); ++i)
            zs[i] = M_ * abel_from_infinity(AffinePoint::finite(xs[i], csqrt(V_.M2(xs[i]))));
        const auto chars = all_characteristics_g2();
        int found = -1;
        double best = 1e300;
        for (int c = 0; c < 6; ++c) {
            double worst = 0.0;
            for (const auto& z : zs) {
                const auto t = detail::theta_at(chars[static_cast<std::size_t>(c)], z, P_.tau, 0);
                worst = std::max(worst, std::abs(t.value) / t.term_scale);
            }
            if (worst < best) {
                best = worst;
                found = c;
            }
        }
        if (best > 1e-8) throw error(error_kind::calibration_failure, "no odd characteristic vanishes on the curve image");
        delta_ = chars[static_cast<std::size_t>(found)];
    }

    void calibrate()
    {
        const auto t = detail::theta_at(delta_, Vec2::Zero(), P_.tau, 1);
        const Eigen::RowVector2cd lin = t.grad.transpose() * M_;
        if (std::abs(lin(1)) < 1e-300) throw error(error_kind::calibration_failure, "sigma has no linear u3 term");
        eps_ = -1.0 / lin(1);
        lin_u1_ = eps_ * lin(0);
        // independent look at the limit sigma(t e3) / (-t), even in t
        auto g = [&](double s) { return sigma(vec2(0.0, s)) / (-s); };
        const cplx g1 = g(1e-2), g2 = g(5e-3), g3 = g(2.5e-3);
        const cplx r1 = (4.0 * g2 - g1) / 3.0, r2 = (4.0 * g3 - g2) / 3.0;
        const cplx lim = (16.0 * r2 - r1) / 15.0;
        calib_residual_ = std::abs(lim - 1.0);
        if (calib_residual_ > opt_.calibration_tol || std::abs(lin_u1_) > opt_.calibration_tol)
            throw error(error_kind::calibration_failure,
                        "sigma normalization does not stabilize (residual " + std::to_string(calib_residual_) + ")");
    }

    CurveV V_;
    PeriodsG2 P_;
    SigmaOptions opt_;
    AbelMap<2> abel_;
    Mat2 M_, H_;
    Characteristic<2> delta_;
    cplx eps_{}, lin_u1_{};
    double calib_residual_ = 0.0;
};

// ---------------------------------------------------------------------------
// genus 1

class SigmaG1 {
public:
    SigmaG1(const CubicCurve& E, const PeriodsG1& P, const Tolerance& tol = {})
        : E_(E), P_(P), abel_(g1_holomorphic(E), tol)
    {
        const auto t = theta1d(1, 1, 0.0, P_.tau, {1e-17, 1});
        dtheta0_ = t.grad(0);
    }

    const CubicCurve& curve() const { return E_; }
    const PeriodsG1& periods() const { return P_; }

    cplx abel_from_infinity(const AffinePoint& Q) const { return abel_.from_infinity(Q)[0]; }

    std::optional<Eigen::Matrix<long long, 2, 1>> lattice_coordinates(cplx v, double tol = 1e-6) const
    {
        return lattice_member(v, 2.0 * P_.omega_p, 2.0 * P_.omega_pp, tol, tol);
    }

    cplx reduce(cplx u) const
    {
        const cplx z = u / (2.0 * P_.omega_p);
        const double n = std::round(z.imag() / P_.tau.imag());
        const double m = std::round((z - n * P_.tau).real());
        return u - 2.0 * P_.omega_p * m - 2.0 * P_.omega_pp * n;
    }

    cplx sigma(cplx u) const
    {
        const cplx w2 = 2.0 * P_.omega_p;
        return w2 / dtheta0_ * std::exp(P_.eta_p * u * u / w2) * theta11(u / w2, P_.tau);
    }

    cplx wp(cplx u) const { return derivs(u).first; }
    cplx wp_prime(cplx u) const { return derivs(u).second; }

    std::pair<cplx, cplx> derivs(cplx u) const
    {
        const cplx w2 = 2.0 * P_.omega_p;
        const auto t = theta1d(1, 1, reduce(u) / w2, P_.tau, {1e-17, 3});
        const cplx th = t.value;
        if (!(std::abs(th) > 1e-12 * t.term_scale)) throw error(error_kind::on_lattice, "point lies on the period lattice");
        const cplx g = t.grad(0) / th, h = t.hess(0, 0) / th, k = t.third[0](0, 0) / th;
        const cplx l2 = h - g * g;
        const cplx l3 = k - 3.0 * h * g + 2.0 * g * g * g;
        const cplx s = 1.0 / w2;
        return {-P_.eta_p / P_.omega_p - s * s * l2, -s * s * s * l3};
    }

    cplx half_period(int j) const
    {
        switch (j) {
        case 1: return P_.omega_p;
        case 2: return P_.omega_p + P_.omega_pp;
        case 3: return P_.omega_pp;
        default: throw error(error_kind::invalid_parameters, "al index must be 1, 2 or 3");
        }
    }

    cplx half_eta(int j) const
    {
        return j == 1 ? P_.eta_p : (j == 2 ? P_.eta_p + P_.eta_pp : P_.eta_pp);
    }

    cplx al(int j, cplx u) const
    {
        const cplx w = half_period(j);
        const cplx su = sigma(u);
        if (std::abs(su) < 1e-300 || std::abs(theta11(reduce(u) / (2.0 * P_.omega_p), P_.tau)) < 1e-14)
            throw error(error_kind::on_lattice, "point lies on the period lattice");
        return std::exp(half_eta(j) * u) * sigma(w - u) / (su * sigma(w));
    }

private:
    CubicCurve E_;
    PeriodsG1 P_;
    AbelMap<1> abel_;
    cplx dtheta0_;
};

// sn, cn, dn as theta quotients for a given tau.
class JacobiElliptic {
public:
    explicit JacobiElliptic(cplx tau) : tau_(tau)
    {
        if (!(tau.imag() > 0.0)) throw error(error_kind::invalid_parameters, "Im tau must be positive");
        t00_ = theta00(0.0, tau);
        t01_ = theta01(0.0, tau);
        t10_ = theta10(0.0, tau);
        m_ = t10_ * t10_ / (t00_ * t00_);
    }

    cplx tau() const { return tau_; }
    cplx modulus() const { return m_; }

    std::array<cplx, 3> sn_cn_dn(cplx u) const
    {
        const cplx z = u / (pi * t00_ * t00_);
        const cplx a00 = theta00(z, tau_), a01 = theta01(z, tau_), a10 = theta10(z, tau_), a11 = theta11(z, tau_);
        const auto ref = theta1d(0, 1, z, tau_, {1e-17, 0});
        if (std::abs(a01) < 1e-12 * ref.term_scale) throw error(error_kind::pole_of_sn, "sn has a pole here");
        return {-t00_ * a11 / (t10_ * a01), t01_ * a10 / (t10_ * a01), t01_ * a00 / (t00_ * a01)};
    }

private:
    cplx tau_, t00_, t01_, t10_, m_;
};

} // namespace g2ell
