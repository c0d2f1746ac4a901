#pragma once

// The genus-2 curve V, its elliptic quotients and the explicit maps between them.

#include "g2ell/core.hpp"

#include <array>
#include <functional>
#include <string>
#include <utility>

namespace g2ell {

struct AffinePoint {
    cplx x{}, y{};
    bool infinite = false;

    static AffinePoint at_infinity() { return {cplx{}, cplx{}, true}; }
    static AffinePoint finite(cplx x, cplx y) { return {x, y, false}; }

    AffinePoint negated() const { return infinite ? *this : finite(x, -y); }
};

namespace detail {

inline bool near(cplx a, cplx b, double rel = 1e-12)
{
    return std::abs(a - b) <= rel * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

inline bool near_zero(cplx a, double tol = 1e-300) { return std::abs(a) <= tol; }

// |lhs - rhs| relative to the larger side, at least 1e-300 to avoid 0/0.
inline double eq_residual(cplx lhs, cplx rhs)
{
    const double s = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    return std::abs(lhs - rhs) / s;
}

} // namespace detail

// y^2 = x^3 + l2 x^2 + l4 x + l6
struct CubicCurve {
    cplx lambda2, lambda4, lambda6;

    CubicCurve(cplx l2, cplx l4, cplx l6) : lambda2(l2), lambda4(l4), lambda6(l6)
    {
        if (std::abs(discriminant()) < 1e-14 * std::max(1.0, scale()))
            throw error(error_kind::invalid_parameters, "cubic has a repeated root");
    }

    cplx operator()(cplx x) const { return ((x + lambda2) * x + lambda4) * x + lambda6; }
    cplx derivative(cplx x) const { return (3.0 * x + 2.0 * lambda2) * x + lambda4; }

    cplx discriminant() const
    {
        const cplx a = lambda2, b = lambda4, c = lambda6;
        return a * a * b * b - 4.0 * b * b * b - 4.0 * a * a * a * c - 27.0 * c * c + 18.0 * a * b * c;
    }

    double scale() const
    {
        const double r = std::max({std::abs(lambda2), std::sqrt(std::abs(lambda4)), std::cbrt(std::abs(lambda6))});
        return std::pow(r, 6);
    }

    // Roots polished by Newton steps.
    std::array<cplx, 3> roots() const
    {
        Eigen::Matrix3cd C = Eigen::Matrix3cd::Zero();
        C(0, 0) = -lambda2;
        C(0, 1) = -lambda4;
        C(0, 2) = -lambda6;
        C(1, 0) = 1.0;
        C(2, 1) = 1.0;
        const Eigen::Vector3cd ev = C.eigenvalues();
        std::array<cplx, 3> r{ev(0), ev(1), ev(2)};
        for (auto& z : r)
            for (int it = 0; it < 3; ++it) {
                const cplx d = derivative(z);
                if (std::abs(d) == 0.0) break;
                z -= (*this)(z) / d;
            }
        return r;
    }

    double residual(const AffinePoint& P) const
    {
        if (P.infinite) return 0.0;
        return detail::eq_residual(P.y * P.y, (*this)(P.x));
    }
};

using WeierstrassCurve = CubicCurve;

// t^2 = s (s - b) (s - c)
struct LegendreCurve {
    cplx b, c;

    LegendreCurve(cplx b_, cplx c_) : b(b_), c(c_)
    {
        if (std::abs(b * c * (b - c)) < 1e-14 * std::max(1.0, std::pow(std::max(std::abs(b), std::abs(c)), 3)))
            throw error(error_kind::invalid_parameters, "Legendre curve needs b c (b - c) != 0");
    }

    cplx operator()(cplx s) const { return s * (s - b) * (s - c); }
    CubicCurve cubic() const { return {-(b + c), b * c, cplx{}}; }
    double residual(const AffinePoint& P) const
    {
        return P.infinite ? 0.0 : detail::eq_residual(P.y * P.y, (*this)(P.x));
    }
};

// t^2 = s^4 + a2 s^2 + a4, with a chosen root aJ.
struct JacobiQuarticCurve {
    cplx a2, a4, aJ;

    JacobiQuarticCurve(cplx a2_, cplx a4_, cplx root) : a2(a2_), a4(a4_), aJ(root)
    {
        if (std::abs(a4 * (a2 * a2 - 4.0 * a4)) < 1e-14)
            throw error(error_kind::invalid_parameters, "Jacobi quartic needs a4 (a2^2 - 4 a4) != 0");
        if (std::abs((*this)(aJ)) > 1e-10 * std::max(1.0, std::norm(aJ) * std::norm(aJ)))
            throw error(error_kind::invalid_parameters, "aJ is not a root of the quartic");
    }

    cplx operator()(cplx s) const { return (s * s + a2) * s * s + a4; }
    cplx d1(cplx s) const { return 4.0 * s * s * s + 2.0 * a2 * s; }
    cplx d2(cplx s) const { return 12.0 * s * s + 2.0 * a2; }
};

// y^2 = x (x - 1)(x - alpha^2)(x - beta^2)(x - alpha^2 beta^2)
struct CurveV {
    cplx alpha, beta;
    cplx lambda2, lambda4, lambda6, lambda8, lambda10;

    cplx ab() const { return alpha * beta; }
    cplx a2() const { return alpha * alpha; }
    cplx b2() const { return beta * beta; }

    cplx M2(cplx x) const { return (((((x + lambda2) * x + lambda4) * x + lambda6) * x + lambda8) * x) + lambda10; }

    std::array<cplx, 5> branch_points() const { return {cplx{}, cplx{1.0, 0.0}, a2(), b2(), a2() * b2()}; }

    double residual(const AffinePoint& P) const
    {
        return P.infinite ? 0.0 : detail::eq_residual(P.y * P.y, M2(P.x));
    }

    // Largest |term| of M2 at x, used to scale relative checks.
    double term_scale(cplx x) const
    {
        const double ax = std::abs(x);
        return std::max({std::pow(ax, 5), std::abs(lambda2) * std::pow(ax, 4), std::abs(lambda4) * std::pow(ax, 3),
                         std::abs(lambda6) * ax * ax, std::abs(lambda8) * ax, 1e-300});
    }
};

inline CurveV curve_v_from_alpha_beta(cplx alpha, cplx beta)
{
    const cplx A = alpha * alpha, B = beta * beta;
    using detail::near;
    std::string why;
    if (near(A, 0.0) || near(A, 1.0)) why = "alpha^2 must differ from 0 and 1";
    else if (near(B, 0.0) || near(B, 1.0)) why = "beta^2 must differ from 0 and 1";
    else if (near(A, B)) why = "alpha^2 must differ from beta^2";
    else if (near(A * B, 1.0)) why = "alpha^2 beta^2 must differ from 1";
    if (!std::isfinite(std::abs(alpha)) || !std::isfinite(std::abs(beta))) why = "alpha and beta must be finite";
    if (!why.empty()) throw error(error_kind::invalid_parameters, why);

    CurveV v;
    v.alpha = alpha;
    v.beta = beta;
    v.lambda2 = -1.0 - A - B - A * B;
    v.lambda4 = A + B + 2.0 * A * B + A * A * B + A * B * B;
    v.lambda6 = -A * A * B * B - A * B * B - A * A * B - A * B;
    v.lambda8 = A * A * B * B;
    v.lambda10 = 0.0;

    // Re-expand the product of linear factors and compare with the lambdas.
    std::array<cplx, 6> poly{1.0, 0, 0, 0, 0, 0}; // poly[k] = coefficient of x^(5-k)
    int deg = 0;
    for (cplx r : v.branch_points()) {
        for (int k = deg + 1; k >= 1; --k) poly[static_cast<std::size_t>(k)] -= r * poly[static_cast<std::size_t>(k - 1)];
        ++deg;
    }
    const std::array<cplx, 5> lam{v.lambda2, v.lambda4, v.lambda6, v.lambda8, v.lambda10};
    for (std::size_t k = 0; k < 5; ++k)
        if (!near(poly[k + 1], lam[k], 1e-12))
            throw error(error_kind::invalid_parameters, "lambda re-expansion mismatch");
    return v;
}

// t^2 = (s^2 - 1)(s^2 - e1^2)(s^2 - e2^2)
struct CurveHPrime {
    cplx e1, e2;

    CurveHPrime(cplx e1_, cplx e2_) : e1(e1_), e2(e2_)
    {
        using detail::near;
        const cplx E1 = e1 * e1, E2 = e2 * e2;
        if (near(E1, 0.0) || near(E1, 1.0)) throw error(error_kind::invalid_parameters, "e1^2 must differ from 0 and 1");
        if (near(E2, 0.0) || near(E2, 1.0)) throw error(error_kind::invalid_parameters, "e2^2 must differ from 0 and 1");
        if (near(E1, E2)) throw error(error_kind::invalid_parameters, "e1^2 must differ from e2^2");
    }

    cplx operator()(cplx s) const
    {
        const cplx s2 = s * s;
        return (s2 - 1.0) * (s2 - e1 * e1) * (s2 - e2 * e2);
    }
    double residual(const AffinePoint& P) const
    {
        return P.infinite ? 0.0 : detail::eq_residual(P.y * P.y, (*this)(P.x));
    }
};

inline std::pair<cplx, cplx> e_from_alpha_beta(cplx alpha, cplx beta)
{
    (void)curve_v_from_alpha_beta(alpha, beta);
    const std::pair<cplx, cplx> e{(alpha + beta) / (alpha - beta), (alpha * beta + 1.0) / (alpha * beta - 1.0)};
    (void)CurveHPrime(e.first, e.second);
    return e;
}

inline std::pair<cplx, cplx> alpha_beta_from_e(cplx e1, cplx e2)
{
    (void)CurveHPrime(e1, e2);
    const cplx alpha = csqrt((e1 + 1.0) * (e2 + 1.0) / ((e1 - 1.0) * (e2 - 1.0)));
    const cplx beta = csqrt((e1 - 1.0) * (e2 + 1.0) / ((e1 + 1.0) * (e2 - 1.0)));
    (void)curve_v_from_alpha_beta(alpha, beta);
    return {alpha, beta};
}

// E1: X(X-1)(X-(a-b)^2/(ab-1)^2), E2: X(X-1)(X-(a+b)^2/(ab+1)^2)
inline std::pair<LegendreCurve, LegendreCurve> elliptic_targets(const CurveV& V)
{
    const cplx a = V.alpha, b = V.beta, ab = V.ab();
    return {LegendreCurve(1.0, (a - b) * (a - b) / ((ab - 1.0) * (ab - 1.0))),
            LegendreCurve(1.0, (a + b) * (a + b) / ((ab + 1.0) * (ab + 1.0)))};
}

inline void check_index(int i)
{
    if (i != 1 && i != 2) throw error(error_kind::invalid_parameters, "cover index must be 1 or 2");
}

// phi_2 is phi_1 with beta replaced by -beta.
inline cplx cover_beta(const CurveV& V, int i) { return i == 1 ? V.beta : -V.beta; }

// phi_i : V -> E_i, degree two.
inline AffinePoint phi(const CurveV& V, int i, const AffinePoint& P)
{
    check_index(i);
    if (P.infinite) return AffinePoint::finite(0.0, 0.0);
    const cplx a = V.alpha, b = cover_beta(V, i), ab = a * b;
    const cplx d = P.x - ab;
    if (d == cplx{}) return AffinePoint::at_infinity();
    const cplx X = (a - b) * (a - b) * P.x / (d * d);
    const cplx Y = (a - b) * (a - b) * P.y / ((ab - 1.0) * d * d * d);
    return AffinePoint::finite(X, Y);
}

// Basepoints O_1, O_2 on V with phi_i(O_i) = infinity.
inline AffinePoint base_point_O(const CurveV& V, int i)
{
    check_index(i);
    const cplx ab = V.ab();
    if (i == 1) return AffinePoint::finite(ab, ab * csqrt(ab) * (ab - 1.0) * (V.alpha - V.beta));
    return AffinePoint::finite(-ab, ab * csqrt(-ab) * (ab + 1.0) * (V.alpha + V.beta));
}

// The two points over S, the first one taking the + sign of the inner root.
inline std::pair<AffinePoint, AffinePoint> phi_preimage(const CurveV& V, int i, const AffinePoint& S)
{
    check_index(i);
    if (S.infinite) {
        const AffinePoint O = base_point_O(V, i);
        return {O, O.negated()};
    }
    if (S.x == cplx{}) return {AffinePoint::finite(0.0, 0.0), AffinePoint::at_infinity()};
    const cplx a = V.alpha, b = cover_beta(V, i), ab = a * b;
    const cplx X = S.x, Y = S.y;
    const cplx r = csqrt(4.0 * ab * X + (a - b) * (a - b));
    auto make = [&](cplx w) {
        const cplx x = ab + (a - b) * w / (2.0 * X);
        const cplx y = (ab - 1.0) * (a - b) * Y * w * w * w / (8.0 * X * X * X);
        return AffinePoint::finite(x, y);
    };
    return {make(a - b + r), make(a - b - r)};
}

// zeta : H' -> V and its inverse direction zeta~ : V -> H'.
inline AffinePoint iso_zeta(cplx e1, cplx e2, const AffinePoint& P)
{
    const CurveHPrime H(e1, e2);
    if (P.infinite)
        throw error(error_kind::invalid_parameters, "H' has two points at infinity; pass a finite point");
    const cplx d = P.x - 1.0;
    if (d == cplx{}) return AffinePoint::at_infinity();
    const cplx x = (e2 + 1.0) * (P.x + 1.0) / ((e2 - 1.0) * d);
    const cplx y = 4.0 * (e2 + 1.0) * (e2 + 1.0) * P.y / ((e2 - 1.0) * (e2 - 1.0) * (e2 - 1.0) * csqrt(e1 * e1 - 1.0) * d * d * d);
    return AffinePoint::finite(x, y);
}

inline AffinePoint iso_zeta_tilde(cplx alpha, cplx beta, const AffinePoint& P)
{
    (void)curve_v_from_alpha_beta(alpha, beta);
    const cplx ab = alpha * beta;
    if (P.infinite) return AffinePoint::finite(1.0, 0.0);
    const cplx d = P.x - ab;
    if (d == cplx{}) return AffinePoint::at_infinity();
    const cplx s = (P.x + ab) / d;
    const cplx t = 8.0 * ab * csqrt(ab) * P.y / ((ab - 1.0) * (alpha - beta) * d * d * d);
    return AffinePoint::finite(s, t);
}

// Constants kappa_1, kappa_2 and the shared root sqrt((1 - a^2)(1 - b^2)).
inline cplx root_one_minus(const CurveV& V) { return csqrt((1.0 - V.a2()) * (1.0 - V.b2())); }

inline cplx kappa(const CurveV& V, int i)
{
    check_index(i);
    return I * (V.alpha + (i == 1 ? -V.beta : V.beta)) / root_one_minus(V);
}

enum class aux_map {
    xi_plus,     // E1 -> E+
    xi_minus,    // E2 -> E-
    xi_bar_1,    // E1 -> curly E1
    xi_bar_2,    // E2 -> curly E2
    xi_tilde_1,  // E1 -> E~1
    xi_tilde_2,  // E2 -> E~2
    pi_plus,     // V -> E+
    pi_minus,    // V -> E-
    pi_curly_1,  // V -> curly E1
    pi_curly_2,  // V -> curly E2
};

// Target curves of the auxiliary maps, as residual functions.
// E+-: Y^2 = X (1 - X)(1 - k^2 X); curly E_i: Y^2 = X (X - 1)(X - k^2);
// E~_i: Y^2 = X (X - 1)(X - 1/k^2).
inline double aux_target_residual(const CurveV& V, aux_map m, const AffinePoint& P)
{
    if (P.infinite) return 0.0;
    const cplx X = P.x, Y2 = P.y * P.y;
    switch (m) {
    case aux_map::xi_plus:
    case aux_map::pi_plus: {
        const cplx k = kappa(V, 1);
        return detail::eq_residual(Y2, X * (1.0 - X) * (1.0 - k * k * X));
    }
    case aux_map::xi_minus:
    case aux_map::pi_minus: {
        const cplx k = kappa(V, 2);
        return detail::eq_residual(Y2, X * (1.0 - X) * (1.0 - k * k * X));
    }
    case aux_map::xi_bar_1:
    case aux_map::pi_curly_1:
    case aux_map::xi_bar_2:
    case aux_map::pi_curly_2: {
        const int i = (m == aux_map::xi_bar_1 || m == aux_map::pi_curly_1) ? 1 : 2;
        const cplx k = kappa(V, i);
        return detail::eq_residual(Y2, X * (X - 1.0) * (X - k * k));
    }
    case aux_map::xi_tilde_1:
    case aux_map::xi_tilde_2: {
        const cplx k = kappa(V, m == aux_map::xi_tilde_1 ? 1 : 2);
        return detail::eq_residual(Y2, X * (X - 1.0) * (X - 1.0 / (k * k)));
    }
    }
    return 0.0;
}

inline AffinePoint aux_isomorphism(const CurveV& V, aux_map m, const AffinePoint& P)
{
    const cplx a = V.alpha, b = V.beta, ab = V.ab();
    const cplx A = V.a2(), B = V.b2();
    const cplx r = root_one_minus(V);
    const cplx q = (1.0 - A) * (1.0 - B);
    switch (m) {
    case aux_map::xi_plus:
    case aux_map::xi_minus: {
        const bool plus = m == aux_map::xi_plus;
        const cplx k = kappa(V, plus ? 1 : 2);
        if (P.infinite) return AffinePoint::finite(1.0 / (k * k), 0.0);
        const cplx d = P.x - 1.0;
        if (d == cplx{}) return AffinePoint::at_infinity();
        const cplx X = P.x / (k * k * d);
        const cplx c = plus ? (1.0 - ab) * r / ((a - b) * (a - b)) : (1.0 + ab) * r / ((a + b) * (a + b));
        return AffinePoint::finite(X, c * P.y / (d * d));
    }
    case aux_map::xi_bar_1:
    case aux_map::xi_bar_2: {
        const int i = m == aux_map::xi_bar_1 ? 1 : 2;
        const cplx k = kappa(V, i);
        if (P.infinite) return AffinePoint::finite(k * k, 0.0);
        if (P.x == cplx{}) return AffinePoint::at_infinity();
        const cplx sgn = i == 1 ? -1.0 : 1.0;
        return AffinePoint::finite(k * k * (P.x - 1.0) / P.x, k * k * (1.0 + sgn * ab) * P.y / (r * P.x * P.x));
    }
    case aux_map::xi_tilde_1:
    case aux_map::xi_tilde_2: {
        if (P.infinite) return P;
        if (m == aux_map::xi_tilde_1) {
            const cplx s = (ab - 1.0) / (a - b);
            return AffinePoint::finite(-s * s * P.x + 1.0, I * s * s * s * P.y);
        }
        const cplx s = (ab + 1.0) / (a + b);
        return AffinePoint::finite(-s * s * P.x + 1.0, -I * s * s * s * P.y);
    }
    case aux_map::pi_plus:
    case aux_map::pi_minus: {
        if (P.infinite) return AffinePoint::finite(0.0, 0.0);
        const cplx d = (P.x - A) * (P.x - B);
        if (d == cplx{}) return AffinePoint::at_infinity();
        const cplx shift = m == aux_map::pi_plus ? P.x - ab : P.x + ab;
        return AffinePoint::finite(q * P.x / d, -r * shift * P.y / (d * d));
    }
    case aux_map::pi_curly_1:
    case aux_map::pi_curly_2: {
        if (P.infinite) return P;
        if (P.x == cplx{}) return AffinePoint::at_infinity();
        const cplx shift = m == aux_map::pi_curly_1 ? P.x - ab : P.x + ab;
        return AffinePoint::finite((P.x - A) * (P.x - B) / (q * P.x), shift * P.y / (q * r * P.x * P.x));
    }
    }
    throw error(error_kind::invalid_parameters, "unknown auxiliary map");
}

struct WeierstrassForm {
    CubicCurve curve;
    std::function<AffinePoint(const AffinePoint&)> map;
};

// s -> x = s - (b + c)/3, t -> y.
inline WeierstrassForm weierstrass_normalize(const LegendreCurve& L)
{
    const cplx b = L.b, c = L.c;
    CubicCurve W(0.0, -(b * b + c * c - b * c) / 3.0, (2.0 * b - c) * (b + c) * (2.0 * c - b) / 27.0);
    const cplx shift = (b + c) / 3.0;
    return {W, [shift](const AffinePoint& P) {
                return P.infinite ? P : AffinePoint::finite(P.x - shift, P.y);
            }};
}

inline WeierstrassForm weierstrass_normalize(const JacobiQuarticCurve& J)
{
    const cplx a2 = J.a2, a4 = J.a4;
    CubicCurve W(0.0, -(4.0 * a4 + a2 * a2 / 3.0), -8.0 / 3.0 * a2 * a4 + 2.0 / 27.0 * a2 * a2 * a2);
    const cplx aJ = J.aJ, f1 = J.d1(J.aJ), f2 = J.d2(J.aJ);
    return {W, [aJ, f1, f2](const AffinePoint& P) {
                if (P.infinite)
                    throw error(error_kind::invalid_parameters, "the quartic has two points at infinity");
                const cplx d = P.x - aJ;
                if (d == cplx{}) return AffinePoint::at_infinity();
                return AffinePoint::finite(f1 / d + f2 / 6.0, f1 * P.y / (d * d));
            }};
}

} // namespace g2ell
