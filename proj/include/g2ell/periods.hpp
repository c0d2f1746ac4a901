#pragma once

// Period matrices, Abel maps and Humbert relations.
//
// Cycles are built as lifts of straight segments joining consecutive branch
// points (sorted by real, then imaginary part). Their intersection numbers are
// read off numerically from the bilinear relation between first- and
// second-kind periods, and an integer symplectic basis is extracted from that.

#include "g2ell/core.hpp"
#include "g2ell/curves.hpp"
#include "g2ell/numerics.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <vector>

namespace g2ell {

// Square root of prod (x - e_m) continued along a straight segment or a ray.
// Every factor is sqrt(d_m) * sqrt((x - e_m) / d_m) with d_m the bisector of the
// directions in which the path is seen from e_m, so the principal root never
// crosses its cut.
class ContinuedRoot {
public:
    ContinuedRoot(const std::vector<cplx>& roots, cplx p, cplx q, bool is_ray) : roots_(roots)
    {
        const cplx far_dir = is_ray ? q / std::abs(q) : cplx{};
        for (std::size_t m = 0; m < roots_.size(); ++m) {
            const cplx e = roots_[m];
            cplx d;
            if (e == p) {
                d = is_ray ? far_dir : (q - p) / std::abs(q - p);
                start_ = static_cast<int>(m);
            }
            else if (!is_ray && e == q) {
                d = (p - q) / std::abs(p - q);
                end_ = static_cast<int>(m);
            }
            else {
                const cplx u1 = (p - e) / std::abs(p - e);
                const cplx u2 = is_ray ? far_dir : (q - e) / std::abs(q - e);
                d = u1 + u2;
                if (std::abs(d) < 1e-12)
                    throw error(error_kind::branch_collision, "integration path runs through a branch point");
                d /= std::abs(d);
            }
            dirs_.push_back(d);
            root_dirs_.push_back(std::sqrt(d));
        }
    }

    // za = x - p and zb = x - q supplied by the quadrature for accuracy.
    cplx operator()(cplx x, cplx za, cplx zb) const
    {
        cplx y = 1.0;
        for (std::size_t m = 0; m < roots_.size(); ++m) {
            cplx off;
            if (static_cast<int>(m) == start_) off = za;
            else if (static_cast<int>(m) == end_) off = zb;
            else off = x - roots_[m];
            y *= root_dirs_[m] * std::sqrt(off / dirs_[m]);
        }
        return y;
    }

private:
    std::vector<cplx> roots_, dirs_, root_dirs_;
    int start_ = -1, end_ = -1;
};

// A family of differentials numer_j(x) dx / y on y^2 = prod (x - e_m).
template <std::size_t N>
struct DifferentialSet {
    std::vector<cplx> roots;
    std::function<std::array<cplx, N>(cplx)> numer;
};

namespace detail {

inline bool is_root(const std::vector<cplx>& roots, cplx x)
{
    return std::find(roots.begin(), roots.end(), x) != roots.end();
}

inline double point_segment_distance(cplx e, cplx p, cplx q)
{
    const cplx d = q - p;
    const double L2 = std::norm(d);
    double t = L2 > 0.0 ? ((e - p) * std::conj(d)).real() / L2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(e - (p + t * d));
}

inline double point_ray_distance(cplx e, cplx o, cplx dir)
{
    const double t = std::max(0.0, ((e - o) * std::conj(dir)).real());
    return std::abs(e - (o + t * dir));
}

template <std::size_t N>
std::array<cplx, N> scaled(std::array<cplx, N> a, cplx s)
{
    for (auto& x : a) x *= s;
    return a;
}

} // namespace detail

// Integral from p to q with y continued along the segment. If y_end is given it
// receives the continued value of y at q.
template <std::size_t N>
std::array<cplx, N> sheet_integral(const DifferentialSet<N>& D, cplx p, cplx q, const Tolerance& tol,
                                   cplx* y_end = nullptr)
{
    const bool sp = detail::is_root(D.roots, p), sq = detail::is_root(D.roots, q);
    const ContinuedRoot y(D.roots, p, q, false);
    if (y_end) *y_end = y(q, q - p, cplx{});
    auto f = [&](cplx x, cplx za, cplx zb) {
        return detail::scaled(D.numer(x), 1.0 / y(x, za, zb));
    };
    return integrate_segment(f, PathSegment(p, q, sp, sq), tol);
}

// Direction for a ray leaving the root e that keeps away from the other roots.
inline cplx clear_ray_direction(const std::vector<cplx>& roots, cplx e)
{
    cplx best = 1.0;
    double best_clear = -1.0;
    for (int j = 0; j < 24; ++j) {
        const cplx dir = std::polar(1.0, 2.0 * pi * j / 24.0);
        double c = 1e300;
        for (cplx r : roots)
            if (r != e) c = std::min(c, detail::point_ray_distance(r, e, dir));
        if (c > best_clear + 1e-12) {
            best_clear = c;
            best = dir;
        }
    }
    return best;
}

// Integral from the root e out to infinity along a clear ray.
template <std::size_t N>
std::array<cplx, N> ray_integral(const DifferentialSet<N>& D, cplx e, const Tolerance& tol)
{
    const cplx dir = clear_ray_direction(D.roots, e);
    const ContinuedRoot y(D.roots, e, dir, true);
    auto f = [&](cplx x, cplx za, cplx) {
        return detail::scaled(D.numer(x), 1.0 / y(x, za, cplx{}));
    };
    return integrate_ray(f, e, dir, tol);
}

// Abel map from infinity: the integral to a branch point (a half period) plus a
// segment from that branch point, the segment being chosen with the largest
// clearance from the remaining branch points.
template <std::size_t N>
class AbelMap {
public:
    AbelMap() = default;
    AbelMap(DifferentialSet<N> D, const Tolerance& tol) : D_(std::move(D)), tol_(tol)
    {
        for (cplx e : D_.roots) half_.push_back(detail::scaled(ray_integral(D_, e, tol_), -1.0));
    }

    const std::vector<std::array<cplx, N>>& half_periods() const { return half_; }
    const std::vector<cplx>& roots() const { return D_.roots; }

    std::array<cplx, N> from_infinity(const AffinePoint& P) const
    {
        if (P.infinite) return {};
        const auto& R = D_.roots;
        std::size_t best = 0;
        double best_clear = -1.0;
        for (std::size_t k = 0; k < R.size(); ++k) {
            if (P.x == R[k]) return half_[k];
            double c = 1e300;
            for (std::size_t m = 0; m < R.size(); ++m)
                if (m != k) c = std::min(c, detail::point_segment_distance(R[m], R[k], P.x));
            if (c > best_clear) {
                best_clear = c;
                best = k;
            }
        }
        return from_root(best, P);
    }

    // Same, forcing the segment to start at root k (path-independence checks).
    std::array<cplx, N> from_root(std::size_t k, const AffinePoint& P) const
    {
        cplx y_end;
        auto seg = sheet_integral(D_, D_.roots[k], P.x, tol_, &y_end);
        const double s = std::abs(y_end - P.y) <= std::abs(y_end + P.y) ? 1.0 : -1.0;
        auto out = half_[k];
        for (std::size_t j = 0; j < N; ++j) out[j] += s * seg[j];
        return out;
    }

private:
    DifferentialSet<N> D_;
    Tolerance tol_;
    std::vector<std::array<cplx, N>> half_;
};

inline std::vector<cplx> sorted_points(std::vector<cplx> pts)
{
    std::sort(pts.begin(), pts.end(), [](cplx a, cplx b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    return pts;
}

inline void check_separation(const std::vector<cplx>& pts, double min_dist = 1e-8)
{
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (std::abs(pts[i] - pts[j]) < min_dist)
                throw error(error_kind::near_degenerate_branch_points, "two branch points are closer than 1e-8");
}

// ---------------------------------------------------------------------------
// genus 1

// Half periods w' = omega_p, w'' = omega_pp of -dx/(2y) and eta_p, eta_pp with
// -2 eta' the a-period of -x dx/(2y).
struct PeriodsG1 {
    cplx omega_p, omega_pp, eta_p, eta_pp, tau;
    std::vector<cplx> roots; // sorted
    double legendre_residual = 0.0;

    cplx lattice_point(long long m1, long long m2) const
    {
        return 2.0 * omega_p * static_cast<double>(m1) + 2.0 * omega_pp * static_cast<double>(m2);
    }
};

inline DifferentialSet<2> g1_differentials(const CubicCurve& E)
{
    const auto r = E.roots();
    return {{r.begin(), r.end()}, [](cplx x) { return std::array<cplx, 2>{-0.5, -0.5 * x}; }};
}

inline DifferentialSet<1> g1_holomorphic(const CubicCurve& E)
{
    const auto r = E.roots();
    return {{r.begin(), r.end()}, [](cplx) { return std::array<cplx, 1>{-0.5}; }};
}

inline double legendre_residual_g1(cplx wp, cplx wpp, cplx ep, cplx epp)
{
    const cplx L = ep * wpp - epp * wp;
    return std::min(std::abs(L - I * (pi / 2)), std::abs(L + I * (pi / 2)));
}

// Move tau into the standard fundamental domain, carrying the quasi-periods along.
inline void reduce_g1(PeriodsG1& P)
{
    for (int it = 0; it < 100; ++it) {
        cplx tau = P.omega_pp / P.omega_p;
        const double n = std::round(tau.real());
        if (n != 0.0) {
            P.omega_pp -= n * P.omega_p;
            P.eta_pp -= n * P.eta_p;
            tau = P.omega_pp / P.omega_p;
        }
        if (std::abs(tau) < 1.0 - 1e-14) {
            const cplx w = P.omega_p, e = P.eta_p;
            P.omega_p = P.omega_pp;
            P.eta_p = P.eta_pp;
            P.omega_pp = -w;
            P.eta_pp = -e;
            continue;
        }
        break;
    }
    P.tau = P.omega_pp / P.omega_p;
}

inline PeriodsG1 periods_g1(const CubicCurve& E, const Tolerance& tol = {})
{
    DifferentialSet<2> D = g1_differentials(E);
    D.roots = sorted_points(D.roots);
    check_separation(D.roots);
    auto c1 = sheet_integral(D, D.roots[0], D.roots[1], tol);
    auto c2 = sheet_integral(D, D.roots[1], D.roots[2], tol);
    PeriodsG1 P;
    P.roots = D.roots;
    // cycle = twice the segment integral; half periods are the segment integrals
    P.omega_p = c1[0];
    P.omega_pp = c2[0];
    P.eta_p = -c1[1];
    P.eta_pp = -c2[1];
    if ((P.omega_pp / P.omega_p).imag() < 0.0) {
        P.omega_pp = -P.omega_pp;
        P.eta_pp = -P.eta_pp;
    }
    if (std::abs((P.omega_pp / P.omega_p).imag()) < 1e-12)
        throw error(error_kind::degenerate_lattice, "genus-1 periods are real-proportional");
    reduce_g1(P);
    P.legendre_residual = legendre_residual_g1(P.omega_p, P.omega_pp, P.eta_p, P.eta_pp);
    return P;
}

inline PeriodsG1 periods_g1(const LegendreCurve& L, const Tolerance& tol = {}) { return periods_g1(L.cubic(), tol); }

// Re-select the basis so that the given half periods represent omega' and
// omega'' modulo the lattice. Representatives come from {w', w'', w' + w''}.
inline PeriodsG1 with_half_period_basis(const PeriodsG1& P, cplx h_prime, cplx h_dprime)
{
    const std::array<std::pair<int, int>, 3> combos{{{1, 0}, {0, 1}, {1, 1}}};
    auto pick = [&](cplx h) {
        for (auto [m, n] : combos) {
            const cplx c = static_cast<double>(m) * P.omega_p + static_cast<double>(n) * P.omega_pp;
            if (lattice_member(h - c, 2.0 * P.omega_p, 2.0 * P.omega_pp)) return std::pair<int, int>{m, n};
        }
        throw error(error_kind::degenerate_lattice, "value is not a non-trivial half period");
    };
    const auto [m1, n1] = pick(h_prime);
    const auto [m2, n2] = pick(h_dprime);
    if (m1 == m2 && n1 == n2) throw error(error_kind::degenerate_lattice, "half periods coincide modulo the lattice");
    PeriodsG1 Q = P;
    Q.omega_p = static_cast<double>(m1) * P.omega_p + static_cast<double>(n1) * P.omega_pp;
    Q.eta_p = static_cast<double>(m1) * P.eta_p + static_cast<double>(n1) * P.eta_pp;
    Q.omega_pp = static_cast<double>(m2) * P.omega_p + static_cast<double>(n2) * P.omega_pp;
    Q.eta_pp = static_cast<double>(m2) * P.eta_p + static_cast<double>(n2) * P.eta_pp;
    if ((Q.omega_pp / Q.omega_p).imag() < 0.0) {
        Q.omega_pp = -Q.omega_pp;
        Q.eta_pp = -Q.eta_pp;
    }
    Q.tau = Q.omega_pp / Q.omega_p;
    Q.legendre_residual = legendre_residual_g1(Q.omega_p, Q.omega_pp, Q.eta_p, Q.eta_pp);
    return Q;
}

// ---------------------------------------------------------------------------
// genus 2

using Mat4i = Eigen::Matrix<long long, 4, 4>;
using Mat24 = Eigen::Matrix<cplx, 2, 4>;

// Half-period matrices: column j of 2 omega_p is the a_j period of (w1, w3),
// -2 eta_p the a_j period of (eta1, eta3); likewise for b cycles.
struct PeriodsG2 {
    Mat2 omega_p, omega_pp, eta_p, eta_pp, tau;
    std::vector<cplx> branch_points;  // sorted
    Mat24 cycle_omega, cycle_eta;     // periods over the chain cycles
    Mat4i intersection;               // of the chain cycles
    Mat4i basis;                      // columns a1 a2 b1 b2 in chain coordinates
    double legendre_residual = 0.0;
    int legendre_sign = 1;            // w'^T eta'' - eta'^T w'' = sign * (pi i / 2) Id

    Eigen::Matrix<cplx, 2, 4> lattice_columns() const
    {
        Eigen::Matrix<cplx, 2, 4> L;
        L << 2.0 * omega_p, 2.0 * omega_pp;
        return L;
    }

    Vec2 lattice_point(const Vec4i& m) const
    {
        return lattice_columns() * m.cast<double>().cast<cplx>();
    }
};

inline DifferentialSet<4> g2_differentials(const CurveV& V)
{
    const cplx l2 = V.lambda2, l4 = V.lambda4;
    const auto b = V.branch_points();
    return {{b.begin(), b.end()}, [l2, l4](cplx x) {
                return std::array<cplx, 4>{-0.5 * x, cplx(-0.5), -0.5 * x * x,
                                           0.5 * (-l4 * x - 2.0 * l2 * x * x - 3.0 * x * x * x)};
            }};
}

inline DifferentialSet<2> g2_holomorphic(const CurveV& V)
{
    const auto b = V.branch_points();
    return {{b.begin(), b.end()}, [](cplx x) { return std::array<cplx, 2>{-0.5 * x, cplx(-0.5)}; }};
}

namespace detail {

inline long long form(const Mat4i& M, const Vec4i& v, const Vec4i& w) { return v.dot(M * w); }

// Integer symplectic basis (a1, a2, b1, b2) for a unimodular alternating form.
inline Mat4i symplectic_basis(const Mat4i& M)
{
    std::vector<Vec4i> vs;
    for (int i = 0; i < 4; ++i) vs.push_back(Vec4i::Unit(i));
    Mat4i out;
    for (int round = 0; round < 2; ++round) {
        bool found = false;
        for (std::size_t i = 0; i < vs.size() && !found; ++i)
            for (std::size_t j = 0; j < vs.size() && !found; ++j) {
                const long long f = form(M, vs[i], vs[j]);
                if (f != 1) continue;
                const Vec4i a = vs[i], b = vs[j];
                std::vector<Vec4i> rest;
                for (std::size_t k = 0; k < vs.size(); ++k)
                    if (k != i && k != j) {
                        const Vec4i v = vs[k];
                        rest.push_back(v - form(M, v, b) * a + form(M, v, a) * b);
                    }
                out.col(round) = a;
                out.col(2 + round) = b;
                vs = rest;
                found = true;
            }
        if (!found) throw error(error_kind::degenerate_lattice, "intersection form is not unimodular");
    }
    return out;
}

} // namespace detail

inline PeriodsG2 periods_from_cycles(const PeriodsG2& raw, const Mat4i& basis)
{
    PeriodsG2 P = raw;
    P.basis = basis;
    const Eigen::Matrix<cplx, 4, 4> B = basis.cast<double>().cast<cplx>();
    const Mat24 W = raw.cycle_omega * B, H = raw.cycle_eta * B;
    P.omega_p = 0.5 * W.leftCols<2>();
    P.omega_pp = 0.5 * W.rightCols<2>();
    P.eta_p = -0.5 * H.leftCols<2>();
    P.eta_pp = -0.5 * H.rightCols<2>();
    P.tau = P.omega_p.inverse() * P.omega_pp;
    const Mat2 L = P.omega_p.transpose() * P.eta_pp - P.eta_p.transpose() * P.omega_pp;
    const Mat2 Id = Mat2::Identity();
    const double rp = (L - I * (pi / 2) * Id).norm(), rm = (L + I * (pi / 2) * Id).norm();
    P.legendre_sign = rp <= rm ? 1 : -1;
    P.legendre_residual = std::min(rp, rm);
    return P;
}

inline double min_eig_im(const Mat2& tau)
{
    Eigen::Matrix2d Y = tau.imag();
    Y = 0.5 * (Y + Y.transpose()).eval();
    return Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(Y).eigenvalues().minCoeff();
}

inline PeriodsG2 periods_g2(const CurveV& V, const Tolerance& tol = {})
{
    DifferentialSet<4> D = g2_differentials(V);
    D.roots = sorted_points(D.roots);
    check_separation(D.roots);
    PeriodsG2 raw;
    raw.branch_points = D.roots;
    for (int k = 0; k < 4; ++k) {
        const auto s = sheet_integral(D, D.roots[static_cast<std::size_t>(k)], D.roots[static_cast<std::size_t>(k + 1)], tol);
        for (int i = 0; i < 2; ++i) {
            raw.cycle_omega(i, k) = 2.0 * s[static_cast<std::size_t>(i)];
            raw.cycle_eta(i, k) = 2.0 * s[static_cast<std::size_t>(2 + i)];
        }
    }
    // Bilinear relation: W^T H - H^T W = 2 pi i (intersection form) up to sign.
    const Eigen::Matrix<cplx, 4, 4> N =
        (raw.cycle_omega.transpose() * raw.cycle_eta - raw.cycle_eta.transpose() * raw.cycle_omega) / (2.0 * pi * I);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const double r = std::round(N(i, j).real());
            if (std::abs(N(i, j) - r) > 1e-6)
                throw error(error_kind::non_convergence, "intersection numbers are not integral");
            raw.intersection(i, j) = static_cast<long long>(r);
        }
    const double det = raw.intersection.cast<double>().determinant();
    if (std::abs(std::abs(det) - 1.0) > 1e-9)
        throw error(error_kind::degenerate_lattice, "chain cycles do not form a homology basis");

    Mat4i basis = detail::symplectic_basis(raw.intersection);
    PeriodsG2 P = periods_from_cycles(raw, basis);
    if (min_eig_im(P.tau) < 0.0) {
        basis.rightCols<2>() *= -1;
        P = periods_from_cycles(raw, basis);
    }
    if (min_eig_im(P.tau) <= 0.0)
        throw error(error_kind::degenerate_lattice, "Im tau is not positive definite");
    return P;
}

inline double tau_asymmetry(const Mat2& tau) { return std::abs(tau(0, 1) - tau(1, 0)); }

// ---------------------------------------------------------------------------
// Humbert relations h1 t11 + h2 t12 + h3 t22 + h4 (t12^2 - t11 t22) + h5 = 0

struct HumbertRelation {
    std::array<long long, 5> h{};
    long long delta = 0;
    double residual = 0.0;
};

inline std::optional<HumbertRelation> humbert_delta4(const Mat2& tau, int bound = 20, double tol = 1e-6)
{
    if (bound < 1) throw error(error_kind::invalid_parameters, "search bound must be positive");
    const cplx t11 = tau(0, 0), t12 = 0.5 * (tau(0, 1) + tau(1, 0)), t22 = tau(1, 1);
    const cplx q = t12 * t12 - t11 * t22;
    std::optional<HumbertRelation> best;
    auto better = [](const std::array<long long, 5>& a, const std::array<long long, 5>& b) {
        long long na = 0, nb = 0;
        for (int i = 0; i < 5; ++i) {
            na = std::max(na, std::llabs(a[static_cast<std::size_t>(i)]));
            nb = std::max(nb, std::llabs(b[static_cast<std::size_t>(i)]));
        }
        if (na != nb) return na < nb;
        return a > b; // lexicographically largest, so positive leading entries win
    };
    const long long B = bound;
    for (long long h1 = -B; h1 <= B; ++h1)
        for (long long h2 = -B; h2 <= B; ++h2)
            for (long long h3 = -B; h3 <= B; ++h3) {
                const cplx s3 = static_cast<double>(h1) * t11 + static_cast<double>(h2) * t12 + static_cast<double>(h3) * t22;
                for (long long h4 = -B; h4 <= B; ++h4) {
                    const cplx S = s3 + static_cast<double>(h4) * q;
                    if (std::abs(S.imag()) > tol) continue;
                    const long long h5 = -std::llround(S.real());
                    if (std::llabs(h5) > B) continue;
                    const double res = std::abs(S + static_cast<double>(h5));
                    if (res > tol) continue;
                    const long long delta = h2 * h2 - 4 * (h1 * h3 + h4 * h5);
                    if (delta != 4) continue;
                    const std::array<long long, 5> h{h1, h2, h3, h4, h5};
                    if (!best || better(h, best->h)) best = HumbertRelation{h, delta, res};
                }
            }
    return best;
}

} // namespace g2ell
