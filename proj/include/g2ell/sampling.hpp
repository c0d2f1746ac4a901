#pragma once

// Test-curve grid and reproducible random sampling on V and its Jacobian.

#include "g2ell/core.hpp"
#include "g2ell/curves.hpp"
#include "g2ell/sigma.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace g2ell {

struct NamedParameters {
    std::string name;
    cplx alpha, beta;
};

namespace detail {

// alpha, beta from the pair (a, b) and the shift r used by the order-48 fixtures
inline std::pair<cplx, cplx> c48_alpha_beta(cplx a, cplx b, cplx r)
{
    const cplx alpha = csqrt((a + r) * (b + r) / ((a - r) * (b - r)));
    const cplx beta = csqrt((a - r) * (b + r) / ((a + r) * (b - r)));
    return {alpha, beta};
}

} // namespace detail

inline std::vector<NamedParameters> default_test_grid()
{
    std::vector<NamedParameters> g{{"real (2,3)", 2.0, 3.0},
                                   {"imaginary (2,3i)", 2.0, cplx(0.0, 3.0)},
                                   {"generic complex", cplx(1.5, 0.5), cplx(0.5, -0.25)}};
    {
        const double s7 = std::sqrt(7.0);
        const cplx a = csqrt(5.0 + 2.0 * s7), b = csqrt(5.0 - 2.0 * s7);
        const auto [al, be] = detail::c48_alpha_beta(a, b, 2.0);
        g.push_back({"torsion-48 fixture 1", al, be});
    }
    {
        const cplx s = csqrt(cplx(-7.0));
        const cplx a = csqrt(-7.0 - 7.0 * s), b = csqrt(-7.0 + 7.0 * s);
        const auto [al, be] = detail::c48_alpha_beta(a, b, std::sqrt(6.0));
        g.push_back({"torsion-48 fixture 2", al, be});
    }
    return g;
}

// mt19937_64 with a platform-independent conversion to doubles.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : gen_(seed) {}

    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // uniform in the disc |z| <= r
    cplx disc(double r)
    {
        const double rho = r * std::sqrt(uniform()), th = 2.0 * pi * uniform();
        return std::polar(rho, th);
    }

    AffinePoint point_on_v(const CurveV& V, double radius = 10.0)
    {
        for (;;) {
            const cplx x = disc(radius);
            bool near = false;
            for (cplx e : V.branch_points()) near = near || std::abs(x - e) < 1e-3;
            if (near) continue;
            const cplx y = (uniform() < 0.5 ? 1.0 : -1.0) * csqrt(V.M2(x));
            return AffinePoint::finite(x, y);
        }
    }

    // u = abel(P) + abel(Q), kept away from the theta divisor
    Vec2 jacobian_point(const SigmaG2& S, double min_distance = 1e-4)
    {
        for (int attempt = 0; attempt < 1000; ++attempt) {
            const AffinePoint P = point_on_v(S.curve()), Q = point_on_v(S.curve());
            if (std::abs(P.x - Q.x) < 1e-3) continue;
            const Vec2 u = S.abel_from_infinity(P) + S.abel_from_infinity(Q);
            if (S.divisor_distance(u) > min_distance) return u;
        }
        throw error(error_kind::non_convergence, "could not sample a point off the theta divisor");
    }

    cplx complex_box(double r) { return {uniform(-r, r), uniform(-r, r)}; }

private:
    std::mt19937_64 gen_;
};

} // namespace g2ell
