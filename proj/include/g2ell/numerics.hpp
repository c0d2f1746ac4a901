#pragma once

// Quadrature on straight complex paths and lattice membership tests.
//
// Integrands may be written either as f(z) or as f(z, z - a, z - b). The second
// form receives the offsets from the segment endpoints computed directly from
// the substitution, which avoids cancellation next to a singular endpoint.

#include "g2ell/core.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

namespace g2ell {

struct Tolerance {
    double abs_tol = 1e-13;
    double rel_tol = 1e-13;
    int max_refinements = 16;

    void validate() const
    {
        if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0) || (abs_tol == 0.0 && rel_tol == 0.0))
            throw error(error_kind::invalid_parameters,
                        "tolerance needs abs_tol >= 0, rel_tol >= 0 and one of them positive");
        if (max_refinements < 1)
            throw error(error_kind::invalid_parameters, "max_refinements must be positive");
    }
};

struct PathSegment {
    cplx start;
    cplx end;
    bool singular_start = false;
    bool singular_end = false;

    PathSegment(cplx a, cplx b, bool sa = false, bool sb = false)
        : start(a), end(b), singular_start(sa), singular_end(sb)
    {
        if (a == b)
            throw error(error_kind::invalid_parameters, "path segment endpoints coincide");
    }

    PathSegment reversed() const { return {end, start, singular_end, singular_start}; }
};

namespace detail {

struct GaussRule {
    std::vector<double> nodes;   // on [0, 1]
    std::vector<double> weights; // sum to 1
};

inline GaussRule make_gauss_rule(int n)
{
    GaussRule r;
    r.nodes.resize(static_cast<std::size_t>(n));
    r.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        r.nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 - x);
        r.weights[static_cast<std::size_t>(i)] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

inline const GaussRule& gauss20()
{
    static const GaussRule rule = make_gauss_rule(20);
    return rule;
}

inline void axpy(cplx& acc, cplx s, const cplx& v) { acc += s * v; }
inline double max_abs(const cplx& v) { return std::abs(v); }
inline bool all_finite(const cplx& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }
inline cplx minus(const cplx& a, const cplx& b) { return a - b; }

template <std::size_t N>
void axpy(std::array<cplx, N>& acc, cplx s, const std::array<cplx, N>& v)
{
    for (std::size_t i = 0; i < N; ++i) acc[i] += s * v[i];
}

template <std::size_t N>
double max_abs(const std::array<cplx, N>& v)
{
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, std::abs(x));
    return m;
}

template <std::size_t N>
bool all_finite(const std::array<cplx, N>& v)
{
    return std::all_of(v.begin(), v.end(), [](const cplx& x) { return all_finite(x); });
}

template <std::size_t N>
std::array<cplx, N> minus(std::array<cplx, N> a, const std::array<cplx, N>& b)
{
    for (std::size_t i = 0; i < N; ++i) a[i] -= b[i];
    return a;
}

template <class F>
auto call_integrand(F& f, cplx z, cplx za, cplx zb)
{
    if constexpr (std::is_invocable_v<F&, cplx, cplx, cplx>)
        return f(z, za, zb);
    else
        return f(z);
}

// Point on a parametrized path: position, dz/dt and offsets from both ends.
struct PathSample {
    cplx z, dz, za, zb;
};

template <class F, class Param>
auto composite_gauss(F& f, const Param& param, const Tolerance& tol, const char* what)
{
    using R = std::decay_t<decltype(call_integrand(f, cplx{}, cplx{}, cplx{}))>;
    const GaussRule& rule = gauss20();

    auto estimate = [&](long panels) {
        R total{};
        const double h = 1.0 / static_cast<double>(panels);
        for (long p = 0; p < panels; ++p) {
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                const PathSample s = param((static_cast<double>(p) + rule.nodes[i]) * h);
                const R v = call_integrand(f, s.z, s.za, s.zb);
                if (!all_finite(v))
                    throw error(error_kind::singular_sample, std::string(what) + ": non-finite integrand sample");
                axpy(total, rule.weights[i] * h * s.dz, v);
            }
        }
        return total;
    };

    R prev = estimate(1);
    for (int k = 1; k <= tol.max_refinements; ++k) {
        R cur = estimate(1L << k);
        if (max_abs(minus(cur, prev)) <= std::max(tol.abs_tol, tol.rel_tol * max_abs(cur))) return cur;
        prev = cur;
    }
    throw error(error_kind::non_convergence, std::string(what) + ": refinement budget exhausted");
}

} // namespace detail

// Integral of f along the straight segment. Flagged endpoints may carry
// (z - a)^(-1/2) behaviour, removed by a sine-squared change of variable.
template <class F>
auto integrate_segment(F&& f, const PathSegment& seg, const Tolerance& tol = {})
{
    tol.validate();
    const cplx a = seg.start, b = seg.end;
    const cplx L = b - a;
    auto param = [&](double t) -> detail::PathSample {
        if (seg.singular_start && seg.singular_end) {
            // z = a + L sin^2(pi t / 2), flat at both ends
            const double s = std::sin(0.5 * pi * t), c = std::cos(0.5 * pi * t);
            return {a + L * (s * s), L * (pi * s * c), L * (s * s), -L * (c * c)};
        }
        if (seg.singular_start) {
            // z = a + 2 L sin^2(pi t / 4), flat at t = 0 only
            const double s = std::sin(0.25 * pi * t);
            const double off = 2.0 * s * s;
            return {a + L * off, L * (0.5 * pi * std::sin(0.5 * pi * t)), L * off, -L * (1.0 - off)};
        }
        if (seg.singular_end) {
            const double s = std::sin(0.25 * pi * (1.0 - t));
            const double off = 2.0 * s * s;
            return {b - L * off, L * (0.5 * pi * std::sin(0.5 * pi * (1.0 - t))), L * (1.0 - off), -L * off};
        }
        return {a + L * t, L, L * t, -L * (1.0 - t)};
    };
    return detail::composite_gauss(f, param, tol, "integrate_segment");
}

// Integral of f along origin + direction * s, s in [0, inf). The integrand must
// decay at least like |z|^(-3/2); an inverse square root at the origin is fine.
// A three-argument integrand receives an infinite third argument.
template <class F>
auto integrate_ray(F&& f, cplx origin, cplx direction, const Tolerance& tol = {})
{
    tol.validate();
    if (std::abs(direction) == 0.0) throw error(error_kind::invalid_parameters, "ray direction is zero");
    const cplx d = direction / std::abs(direction);
    const cplx inf{std::numeric_limits<double>::infinity(), 0.0};
    // s = (t / (1 - t))^2 smooths both ends
    auto param = [&](double t) -> detail::PathSample {
        const double r = t / (1.0 - t);
        const double ds = 2.0 * t / ((1.0 - t) * (1.0 - t) * (1.0 - t));
        return {origin + d * (r * r), d * ds, d * (r * r), inf};
    };
    return detail::composite_gauss(f, param, tol, "integrate_ray");
}

// Solve v = sum x_j col_j over the reals (2g unknowns).
template <int G>
Eigen::Matrix<double, 2 * G, 1> real_coordinates(const Eigen::Matrix<cplx, G, 1>& v,
                                                 const Eigen::Matrix<cplx, G, 2 * G>& columns)
{
    constexpr int n = 2 * G;
    Eigen::Matrix<double, n, n> A;
    Eigen::Matrix<double, n, 1> rhs;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < G; ++i) {
            A(i, j) = columns(i, j).real();
            A(G + i, j) = columns(i, j).imag();
        }
    for (int i = 0; i < G; ++i) {
        rhs(i) = v(i).real();
        rhs(G + i) = v(i).imag();
    }
    const Eigen::JacobiSVD<Eigen::Matrix<double, n, n>> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (!(sv(0) > 0.0) || sv(n - 1) < 1e-12 * sv(0))
        throw error(error_kind::degenerate_lattice, "lattice columns do not span C^g over R");
    return svd.solve(rhs);
}

// Integer m with v = sum m_j col_j, or empty when v is off the lattice. Each real
// coefficient must lie within int_tol of an integer and the reconstruction
// error must stay below residual_tol (relative to max(1, |v|)).
template <int G>
std::optional<Eigen::Matrix<long long, 2 * G, 1>>
lattice_member(const Eigen::Matrix<cplx, G, 1>& v, const Eigen::Matrix<cplx, G, 2 * G>& columns,
               double int_tol = 1e-6, double residual_tol = 1e-6)
{
    constexpr int n = 2 * G;
    const Eigen::Matrix<double, n, 1> x = real_coordinates<G>(v, columns);
    Eigen::Matrix<long long, n, 1> m;
    for (int i = 0; i < n; ++i) {
        const double r = std::round(x(i));
        if (!(std::abs(x(i) - r) <= int_tol)) return std::nullopt;
        m(i) = static_cast<long long>(r);
    }
    Eigen::Matrix<cplx, G, 1> back = v;
    for (int j = 0; j < n; ++j) back -= static_cast<double>(m(j)) * columns.col(j);
    if (back.norm() > residual_tol * std::max(1.0, v.norm())) return std::nullopt;
    return m;
}

inline std::optional<Eigen::Matrix<long long, 2, 1>> lattice_member(cplx v, cplx col1, cplx col2,
                                                                    double int_tol = 1e-6,
                                                                    double residual_tol = 1e-6)
{
    Eigen::Matrix<cplx, 1, 1> vv;
    vv << v;
    Eigen::Matrix<cplx, 1, 2> cols;
    cols << col1, col2;
    return lattice_member<1>(vv, cols, int_tol, residual_tol);
}

} // namespace g2ell
