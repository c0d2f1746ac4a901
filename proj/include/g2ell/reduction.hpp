#pragma once

// Reduction of the Kleinian functions of V to elliptic functions on E1, E2.
//
// All closed-form right-hand sides are written out term by term; checks compare
// them against values obtained from the theta series.

#include "g2ell/core.hpp"
#include "g2ell/curves.hpp"
#include "g2ell/periods.hpp"
#include "g2ell/sigma.hpp"

#include <array>
#include <memory>
#include <optional>
#include <tuple>

namespace g2ell {

// Coefficients of the maps between Jac(V) and E1 x E2.
struct IsogenyCoefficients {
    cplx a1, b1, a2, b2; // push-forward: u -> a_i u1 + b_i u3
    cplx c1, d1, c2, d2; // pull-back: v -> v k_i, k_i = (c_i, d_i)

    static IsogenyCoefficients from(const CurveV& V)
    {
        const cplx ab = V.ab();
        IsogenyCoefficients c;
        c.a1 = 1.0 - ab;
        c.b1 = ab * (1.0 - ab);
        c.a2 = ab + 1.0;
        c.b2 = -ab * (ab + 1.0);
        c.c1 = 1.0 / (1.0 - ab);
        c.d1 = 1.0 / (ab * (1.0 - ab));
        c.c2 = 1.0 / (1.0 + ab);
        c.d2 = -1.0 / (ab * (1.0 + ab));
        return c;
    }

    cplx a(int i) const { return i == 1 ? a1 : a2; }
    cplx b(int i) const { return i == 1 ? b1 : b2; }
    Vec2 k(int i) const { return i == 1 ? vec2(c1, d1) : vec2(c2, d2); }
    Mat2 K() const { return mat2(c1, c2, d1, d2); }
    Mat2 A() const { return mat2(a1, b1, a2, b2); }
};

// An elliptic curve in the form y^2 = cubic with its periods and sigma.
struct EllipticFactor {
    CubicCurve cubic;
    PeriodsG1 periods;
    std::shared_ptr<SigmaG1> sigma;

    EllipticFactor(const CubicCurve& E, const PeriodsG1& P, const Tolerance& tol)
        : cubic(E), periods(P), sigma(std::make_shared<SigmaG1>(E, P, tol))
    {
    }
};

struct KvValues {
    cplx p11, p13, p33;
    cplx p1, p2, p3;
    cplx P1, P2, dP1, dP2; // wp and wp' of E1 at v1 and E2 at v2
    // factors of p11, p13 - a^2 b^2 and p33 as products
    cplx n11, n13, n33;
};

struct QValues {
    cplx q, q1, q3, q11, q13, q33;
};

struct KdvResiduals {
    cplx r1, r2, r3;
    double scale1 = 1.0, scale2 = 1.0, scale3 = 1.0;

    double rel1() const { return std::abs(r1) / scale1; }
    double rel2() const { return std::abs(r2) / scale2; }
    double rel3() const { return std::abs(r3) / scale3; }
};

class ReductionContext {
public:
    explicit ReductionContext(const CurveV& V, const Tolerance& tol = {})
        : V_(V), coef_(IsogenyCoefficients::from(V)), periods_(periods_g2(V, tol)), sigma_(V, periods_, tol)
    {
        const auto [L1, L2] = elliptic_targets(V);
        for (int i = 1; i <= 2; ++i) {
            const LegendreCurve& L = i == 1 ? L1 : L2;
            E_[static_cast<std::size_t>(i - 1)] = std::make_unique<EllipticFactor>(L.cubic(), periods_g1(L, tol), tol);

            const cplx k = kappa(V, i);
            kappa_[static_cast<std::size_t>(i - 1)] = k;
            const LegendreCurve Lt(1.0, 1.0 / (k * k));
            const CubicCurve Ct = Lt.cubic();
            const PeriodsG1 raw = periods_g1(Ct, tol);
            const AbelMap<1> ab(g1_holomorphic(Ct), tol);
            // roots of the cubic are numerical, so pick the nearest one
            auto half_at = [&](cplx e) {
                std::size_t best = 0;
                for (std::size_t r = 1; r < ab.roots().size(); ++r)
                    if (std::abs(ab.roots()[r] - e) < std::abs(ab.roots()[best] - e)) best = r;
                return ab.half_periods()[best][0];
            };
            const PeriodsG1 Pt = with_half_period_basis(raw, half_at(1.0 / (k * k)), half_at(0.0));
            Et_[static_cast<std::size_t>(i - 1)] = std::make_unique<EllipticFactor>(Ct, Pt, tol);
            jac_[static_cast<std::size_t>(i - 1)] = std::make_unique<JacobiElliptic>(Pt.tau);
        }
    }

    const CurveV& curve() const { return V_; }
    const IsogenyCoefficients& coefficients() const { return coef_; }
    const PeriodsG2& periods() const { return periods_; }
    const SigmaG2& sigma() const { return sigma_; }
    const EllipticFactor& E(int i) const { check_index(i); return *E_[static_cast<std::size_t>(i - 1)]; }
    const EllipticFactor& E_tilde(int i) const { check_index(i); return *Et_[static_cast<std::size_t>(i - 1)]; }
    const JacobiElliptic& jacobi(int i) const { check_index(i); return *jac_[static_cast<std::size_t>(i - 1)]; }
    cplx kappa_value(int i) const { check_index(i); return kappa_[static_cast<std::size_t>(i - 1)]; }

    WpValues wp(const Vec2& u) const { return sigma_.wp(u); }

    // ---- f-functions

    cplx f_direct(int i, const Vec2& u) const
    {
        check_index(i);
        return E(i).sigma->wp(coef_.a(i) * u(0) + coef_.b(i) * u(1));
    }

    cplx f_formula(int i, const WpValues& w) const
    {
        check_index(i);
        const cplx ab = V_.ab(), ab2 = ab * ab, ab3 = ab2 * ab;
        const cplx den0 = w.p13 + ab2;
        if (std::abs(den0) < 1e-12 * std::max(1.0, std::abs(ab2)))
            throw error(error_kind::denominator_vanishes, "p13 + a^2 b^2 vanishes");
        const cplx al = V_.alpha, be = V_.beta;
        if (i == 1) {
            const cplx A1 = w.p33 + ab2 * w.p11 + ab * (ab - 1.0) * (ab - 1.0) * (al - be) * (al - be) - 2.0 * ab3;
            const cplx num = -ab * w.p13 * w.p13 - A1 * w.p13 - ab * (w.p11 - ab) * (w.p33 - ab3);
            return num / ((ab - 1.0) * (ab - 1.0) * den0 * den0);
        }
        const cplx A2 = w.p33 + ab2 * w.p11 - ab * (ab + 1.0) * (ab + 1.0) * (al + be) * (al + be) + 2.0 * ab3;
        const cplx num = ab * w.p13 * w.p13 - A2 * w.p13 + ab * (w.p11 + ab) * (w.p33 + ab3);
        return num / ((ab + 1.0) * (ab + 1.0) * den0 * den0);
    }

    // ---- restrictions to the lines k_i v

    WpValues restrict_wp(int i, cplx v) const
    {
        check_index(i);
        const auto [P, dP] = E(i).sigma->derivs(v);
        if (std::abs(P) < 1e-14) throw error(error_kind::denominator_vanishes, "wp of the elliptic factor vanishes");
        const cplx ab = V_.ab(), ab2 = ab * ab, ab3 = ab2 * ab;
        const cplx al = V_.alpha, be = V_.beta;
        WpValues w;
        w.p13 = -ab2;
        if (i == 1) {
            const cplx m = ab - 1.0, d2 = (al - be) * (al - be);
            w.p11 = 2.0 * ab + d2 / P;
            w.p33 = ab2 * (m * m * P + 2.0 * ab);
            w.p111 = m * dP * (d2 + ab * P) / (P * P);
            w.p113 = -ab2 * m * dP / P;
            w.p133 = ab3 * m * dP / P;
            w.p333 = -ab3 * m * (m * m * P + ab) * dP / P;
        }
        else {
            const cplx m = ab + 1.0, s2 = (al + be) * (al + be);
            w.p11 = -2.0 * ab + s2 / P;
            w.p33 = ab2 * (m * m * P - 2.0 * ab);
            w.p111 = -m * dP * (s2 - ab * P) / (P * P);
            w.p113 = ab2 * m * dP / P;
            w.p133 = ab3 * m * dP / P;
            w.p333 = -ab3 * m * (m * m * P - ab) * dP / P;
        }
        return w;
    }

    // ---- values on K v in terms of E1 and E2

    KvValues wp_on_Kv(cplx v1, cplx v2) const
    {
        KvValues r;
        std::tie(r.P1, r.dP1) = E(1).sigma->derivs(v1);
        std::tie(r.P2, r.dP2) = E(2).sigma->derivs(v2);
        const cplx al = V_.alpha, be = V_.beta, ab = V_.ab(), ab2 = ab * ab;
        const cplx a2 = al * al, b2 = be * be;
        const cplx P1 = r.P1, P2 = r.P2, dd = r.dP1 * r.dP2;
        const cplx mm = (ab - 1.0) * (ab - 1.0), pp = (ab + 1.0) * (ab + 1.0);
        const cplx sp = (al + be) * (al + be), sm = (al - be) * (al - be);
        r.p1 = (mm * P1 - pp * P2 + 8.0 * ab) * P1 * P2 - sp * P1 + sm * P2;
        r.p2 = (ab2 - 1.0) * dd - 2.0 * (mm * P1 + pp * P2 - 2.0 * (a2 + 1.0) * (b2 + 1.0)) * P1 * P2 - 2.0 * (sp * P1 + sm * P2);
        r.p3 = -2.0 * ab * r.p1 - 2.0 * (a2 * b2 * b2 + a2 * a2 * b2 - 4.0 * ab2 + a2 + b2) * P1 * P2;
        if (std::abs(r.p1) < 1e-14 * std::max(1.0, std::abs(r.p2)))
            throw error(error_kind::denominator_vanishes, "p1 vanishes");
        r.n11 = mm * sp * P1 * P1 + pp * sm * P2 * P2 + r.p3;
        r.n13 = (ab2 - 1.0) * dd - r.p2;
        r.n33 = (ab2 - 1.0) * (ab2 - 1.0) * P1 * P1 * P2 * P2 + (a2 - b2) * (a2 - b2) + r.p3;
        const cplx den = 2.0 * r.p1 * r.p1;
        r.p11 = -r.p2 * r.n11 / den;
        r.p13 = ab2 + ab2 * r.p2 * r.n13 / den;
        r.p33 = -ab2 * r.p2 * r.n33 / den;
        return r;
    }

    // ---- addition formulas

    static QValues q_functions(const CurveV& L, const WpValues& u, const WpValues& v)
    {
        auto det = [](const WpValues& w) { return w.p11 * w.p33 - w.p13 * w.p13; };
        const cplx Pu = det(u), Pv = det(v);
        QValues q;
        q.q = u.p33 - v.p33 + u.p13 * v.p11 - v.p13 * u.p11;
        q.q1 = u.p133 - v.p133 + u.p113 * v.p11 - v.p113 * u.p11 + v.p111 * u.p13 - u.p111 * v.p13;
        q.q3 = u.p333 - v.p333 + u.p133 * v.p11 - v.p133 * u.p11 + v.p113 * u.p13 - u.p113 * v.p13;
        q.q11 = 8.0 * L.lambda2 * (u.p13 * v.p11 - v.p13 * u.p11) + 4.0 * L.lambda4 * (u.p13 - v.p13) - 4.0 * (Pu - Pv) -
                8.0 * (u.p33 * v.p11 - v.p33 * u.p11) + 2.0 * (u.p113 * v.p111 - v.p113 * u.p111);
        q.q13 = 4.0 * L.lambda6 * (u.p13 - v.p13) + 2.0 * L.lambda4 * (u.p13 * v.p11 - v.p13 * u.p11) -
                4.0 * (u.p33 * v.p13 - v.p33 * u.p13) + 2.0 * (Pu * v.p11 - Pv * u.p11) - 2.0 * L.lambda8 * (u.p11 - v.p11) +
                v.p111 * u.p133 - u.p111 * v.p133;
        q.q33 = 4.0 * L.lambda6 * q.q + 4.0 * L.lambda8 * (u.p13 - v.p13) + 4.0 * (Pu * v.p13 - Pv * u.p13) +
                2.0 * (u.p133 * v.p113 - v.p133 * u.p113);
        return q;
    }

    // (p11, p13, p33) at u + v from values at u and v
    static std::array<cplx, 3> addition(const CurveV& L, const WpValues& u, const WpValues& v)
    {
        const QValues q = q_functions(L, u, v);
        if (std::abs(q.q) < 1e-14) throw error(error_kind::denominator_vanishes, "q vanishes");
        return {-u.p11 - v.p11 + 0.25 * (q.q1 / q.q) * (q.q1 / q.q) - q.q11 / (4.0 * q.q),
                -u.p13 - v.p13 + q.q1 * q.q3 / (4.0 * q.q * q.q) - q.q13 / (4.0 * q.q),
                -u.p33 - v.p33 + 0.25 * (q.q3 / q.q) * (q.q3 / q.q) - q.q33 / (4.0 * q.q)};
    }

    // ---- Jacobi inversion

    std::pair<AffinePoint, AffinePoint> jacobi_inversion(const Vec2& u) const
    {
        const WpValues w = wp(u);
        const cplx disc = csqrt(w.p11 * w.p11 + 4.0 * w.p13);
        if (std::abs(disc) < 1e-8 * std::max(1.0, std::abs(w.p11)))
            throw error(error_kind::branch_collision, "the two points of the divisor share their x coordinate");
        const cplx x1 = 0.5 * (w.p11 + disc), x2 = 0.5 * (w.p11 - disc);
        auto y = [&](cplx x) { return 0.5 * (-w.p111 * x - w.p113); };
        return {AffinePoint::finite(x1, y(x1)), AffinePoint::finite(x2, y(x2))};
    }

    // ---- Kummer coordinates

    std::array<cplx, 3> kummer_Z(const WpValues& w) const
    {
        const cplx a2 = V_.a2(), b2 = V_.b2(), ab2 = a2 * b2;
        const cplx D = (a2 + b2) * (w.p13 - ab2) + ab2 * w.p11 + w.p33;
        if (std::abs(D) < 1e-14) throw error(error_kind::denominator_vanishes, "Kummer denominator vanishes");
        return {-(1.0 - a2) * (1.0 - b2) * (ab2 + w.p13) / D,
                -((1.0 + ab2) * (ab2 - w.p13) - ab2 * w.p11 - w.p33) / D,
                -(ab2 * w.p11 - w.p33) / D};
    }

    std::array<cplx, 3> wp_from_Z(const std::array<cplx, 3>& Z) const
    {
        const cplx a2 = V_.a2(), b2 = V_.b2(), ab2 = a2 * b2;
        const cplx den = Z[0] + Z[1] - 1.0;
        if (std::abs(den) < 1e-14) throw error(error_kind::denominator_vanishes, "Z1 + Z2 - 1 vanishes");
        return {((a2 + b2) * (Z[1] - Z[2]) + (1.0 + ab2) * (Z[2] - 1.0)) / den,
                ab2 * (1.0 + Z[0] - Z[1]) / den,
                ab2 * ((a2 + b2) * (Z[1] + Z[2]) - (1.0 + ab2) * (Z[2] + 1.0)) / den};
    }

    // w1, w2 of the product coordinates
    std::pair<cplx, cplx> w_coordinates(const Vec2& u) const
    {
        const cplx r = root_one_minus(V_), ab = V_.ab();
        return {r * (u(0) + ab * u(1)), r * (u(0) - ab * u(1))};
    }

    // sn, cn, dn products at (w1, w2)
    std::array<cplx, 3> Z_from_jacobi(const Vec2& u) const
    {
        const auto [w1, w2] = w_coordinates(u);
        const auto s1 = jacobi(1).sn_cn_dn(w1), s2 = jacobi(2).sn_cn_dn(w2);
        return {s1[0] * s2[0], s1[1] * s2[1], s1[2] * s2[2]};
    }

    // wp of E_i at a scaled argument and the same value through E~_i
    std::pair<cplx, cplx> wp_tilde_bridge(int i, cplx u) const
    {
        check_index(i);
        const cplx al = V_.alpha, be = V_.beta, ab = V_.ab();
        if (i == 1) {
            const cplx lhs = E(1).sigma->wp(-I * (ab - 1.0) / (al - be) * u);
            const cplx f = (al - be) * (al - be) / ((ab - 1.0) * (ab - 1.0));
            return {lhs, f * (1.0 - E_tilde(1).sigma->wp(u))};
        }
        const cplx lhs = E(2).sigma->wp(I * (ab + 1.0) / (al + be) * u);
        const cplx f = (al + be) * (al + be) / ((ab + 1.0) * (ab + 1.0));
        return {lhs, f * (1.0 - E_tilde(2).sigma->wp(u))};
    }

    // (sn^2, cn^2, dn^2) at u and the same from wp of E~_i at kappa_i u
    std::pair<std::array<cplx, 3>, std::array<cplx, 3>> jacobi_wp_bridge(int i, cplx u) const
    {
        const cplx k = kappa_value(i);
        const auto s = jacobi(i).sn_cn_dn(u);
        const cplx P = E_tilde(i).sigma->wp(k * u);
        return {{s[0] * s[0], s[1] * s[1], s[2] * s[2]}, {1.0 / (k * k * P), (P - 1.0 / (k * k)) / P, (P - 1.0) / P}};
    }

    // ---- al-product coordinates

    std::array<cplx, 3> al_products(const Vec2& u) const
    {
        const auto [w1, w2] = w_coordinates(u);
        const cplx x1 = kappa_value(1) * w1, x2 = kappa_value(2) * w2;
        std::array<cplx, 3> out{};
        for (int j = 1; j <= 3; ++j)
            out[static_cast<std::size_t>(j - 1)] = E_tilde(1).sigma->al(j, x1) * E_tilde(2).sigma->al(j, x2);
        return out;
    }

    std::array<cplx, 3> al_from_wp(const WpValues& w) const
    {
        const cplx a2 = V_.a2(), b2 = V_.b2(), ab2 = a2 * b2;
        const cplx C = (a2 - b2) / ((1.0 - a2) * (1.0 - a2) * (1.0 - b2) * (1.0 - b2));
        const cplx den = ab2 + w.p13;
        if (std::abs(den) < 1e-14) throw error(error_kind::denominator_vanishes, "p13 + a^2 b^2 vanishes");
        return {C * ((1.0 + ab2) * (w.p13 - ab2) + ab2 * w.p11 + w.p33) / den, C * (w.p33 - ab2 * w.p11) / den,
                C * ((a2 + b2) * (w.p13 - ab2) + ab2 * w.p11 + w.p33) / den};
    }

    std::array<cplx, 3> wp_from_al(const std::array<cplx, 3>& Z) const
    {
        const cplx a2 = V_.a2(), b2 = V_.b2(), ab2 = a2 * b2;
        const cplx q = (1.0 - a2) * (1.0 - b2);
        const cplx den = q * (Z[2] - Z[0]) + a2 - b2;
        if (std::abs(den) < 1e-14) throw error(error_kind::denominator_vanishes, "al-product denominator vanishes");
        return {q * ((1.0 + ab2) * Z[2] - q * Z[1] - (a2 + b2) * Z[0]) / den, ab2 * (q * (Z[0] - Z[2]) + a2 - b2) / den,
                ab2 * q * ((1.0 + ab2) * Z[2] + q * Z[1] - (a2 + b2) * Z[0]) / den};
    }

    // ---- KdV hierarchy

    KdvResiduals kdv_residuals(const Vec2& u, double h = 1e-3) const
    {
        if (!(h > 0.0)) throw error(error_kind::invalid_parameters, "step must be positive");
        const cplx l2 = V_.lambda2;
        const WpValues w = wp(u);
        // second u1-derivative by Richardson-extrapolated central differences
        auto d2 = [&](auto get) {
            auto central = [&](double s) {
                return (get(wp(u + vec2(s, 0.0))) - 2.0 * get(w) + get(wp(u - vec2(s, 0.0)))) / (s * s);
            };
            return (4.0 * central(0.5 * h) - central(h)) / 3.0;
        };
        auto d1 = [&](auto get) {
            auto central = [&](double s) { return (get(wp(u + vec2(s, 0.0))) - get(wp(u - vec2(s, 0.0)))) / (2.0 * s); };
            return (4.0 * central(0.5 * h) - central(h)) / 3.0;
        };
        const cplx F = 2.0 * w.p11 + 2.0 / 3.0 * l2, G = 2.0 * w.p13;
        const cplx F1 = 2.0 * w.p111, F3 = 2.0 * w.p113;
        const cplx F111 = 2.0 * d2([](const WpValues& x) { return x.p111; });
        const cplx F113 = 2.0 * d2([](const WpValues& x) { return x.p113; });
        const cplx G1 = 2.0 * d1([](const WpValues& x) { return x.p13; });
        KdvResiduals r;
        const cplx t1a = F3, t1b = 0.25 * F111, t1c = 1.5 * F * F1;
        r.r1 = t1a - t1b + t1c;
        r.scale1 = std::max({1.0, std::abs(t1a), std::abs(t1b), std::abs(t1c)});
        const cplx t2a = 0.25 * F113, t2b = (F + l2 / 3.0) * F3, t2c = 0.5 * F1 * G;
        r.r2 = t2a - t2b - t2c;
        r.scale2 = std::max({1.0, std::abs(t2a), std::abs(t2b), std::abs(t2c)});
        r.r3 = F3 - G1;
        r.scale3 = std::max({1.0, std::abs(F3), std::abs(G1)});
        return r;
    }

private:
    CurveV V_;
    IsogenyCoefficients coef_;
    PeriodsG2 periods_;
    SigmaG2 sigma_;
    std::array<std::unique_ptr<EllipticFactor>, 2> E_, Et_;
    std::array<std::unique_ptr<JacobiElliptic>, 2> jac_;
    std::array<cplx, 2> kappa_{};
};

} // namespace g2ell
