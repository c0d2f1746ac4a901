#pragma once

// Scalar/vector aliases and the error hierarchy shared by every module.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace g2ell {

using cplx = std::complex<double>;
using Vec2 = Eigen::Matrix<cplx, 2, 1>;
using Mat2 = Eigen::Matrix<cplx, 2, 2>;
using Vec4i = Eigen::Matrix<long long, 4, 1>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

enum class error_kind {
    invalid_parameters,
    non_convergence,
    singular_sample,
    degenerate_lattice,
    near_degenerate_branch_points,
    calibration_failure,
    on_theta_divisor,
    on_lattice,
    pole_of_sn,
    denominator_vanishes,
    branch_collision,
};

inline const char* to_string(error_kind k)
{
    switch (k) {
    case error_kind::invalid_parameters: return "InvalidParameters";
    case error_kind::non_convergence: return "NonConvergence";
    case error_kind::singular_sample: return "SingularSample";
    case error_kind::degenerate_lattice: return "DegenerateLattice";
    case error_kind::near_degenerate_branch_points: return "NearDegenerateBranchPoints";
    case error_kind::calibration_failure: return "CalibrationFailure";
    case error_kind::on_theta_divisor: return "OnThetaDivisor";
    case error_kind::on_lattice: return "OnLattice";
    case error_kind::pole_of_sn: return "PoleOfSn";
    case error_kind::denominator_vanishes: return "DenominatorVanishes";
    case error_kind::branch_collision: return "BranchCollision";
    }
    return "Unknown";
}

class error : public std::runtime_error {
public:
    error(error_kind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {}

    error_kind kind() const noexcept { return kind_; }

    // True for failures that come from the numerics rather than from the input.
    bool is_numerical() const noexcept
    {
        return kind_ != error_kind::invalid_parameters;
    }

private:
    error_kind kind_;
};

// A complex number whose square is z. Principal branch everywhere.
inline cplx csqrt(cplx z) { return std::sqrt(z); }

inline double rel_residual(cplx lhs, cplx rhs)
{
    return std::abs(lhs - rhs) / std::max(1.0, std::max(std::abs(lhs), std::abs(rhs)));
}

inline Vec2 vec2(cplx a, cplx b)
{
    Vec2 v;
    v << a, b;
    return v;
}

inline Mat2 mat2(cplx a, cplx b, cplx c, cplx d)
{
    Mat2 m;
    m << a, b, c, d;
    return m;
}

} // namespace g2ell
