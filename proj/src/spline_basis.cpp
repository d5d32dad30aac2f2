#include "tfbs/spline_basis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tfbs {
namespace {

// Below this, sinh(t) - t and t cosh(t) - sinh(t) go through their series:
// direct evaluation only reaches ~6 eps / t^2 relative accuracy, while the
// series truncation error at the crossover is below 1e-15 relative.
constexpr double kSeriesCutoff = 0.25;

// (sinh(t) - t) / t^3, even in t
double sinh_minus_arg_over_cube(double t) {
    const double t2 = t * t;
    return 1.0 / 6.0 +
           t2 * (1.0 / 120.0 + t2 * (1.0 / 5040.0 + t2 * (1.0 / 362880.0 + t2 / 39916800.0)));
}

// (t cosh(t) - sinh(t)) / t^3, even in t
double arg_cosh_minus_sinh_over_cube(double t) {
    const double t2 = t * t;
    return 1.0 / 3.0 +
           t2 * (1.0 / 30.0 + t2 * (1.0 / 840.0 + t2 * (1.0 / 45360.0 + t2 / 3991680.0)));
}

// sinh(t) - t, stable for every t (the cube keeps the sign)
double sinh_minus_arg(double t) {
    return std::abs(t) < kSeriesCutoff ? t * t * t * sinh_minus_arg_over_cube(t)
                                       : std::sinh(t) - t;
}

// cosh(t) - 1 without cancellation
double cosh_minus_one(double t) {
    const double s = std::sinh(0.5 * t);
    return 2.0 * s * s;
}

}  // namespace

BasisConstants basis_constants(double tension, double spacing) {
    if (!(tension > 0.0) || !std::isfinite(tension))
        throw std::invalid_argument("basis tension must be positive and finite");
    if (!(spacing > 0.0) || !std::isfinite(spacing))
        throw std::invalid_argument("grid spacing must be positive and finite");

    const double t = tension * spacing;
    const double s = std::sinh(t);
    const double c = std::cosh(t);
    if (!std::isfinite(s) || !std::isfinite(c))
        throw std::range_error("rho*h_x = " + std::to_string(t) +
                               " overflows sinh/cosh; reduce tension or spacing");

    const double cm1 = cosh_minus_one(t);
    const double numer = sinh_minus_arg(t);
    const double denom =
        t < kSeriesCutoff ? t * t * t * arg_cosh_minus_sinh_over_cube(t) : t * c - s;

    BasisConstants b;
    b.tension = tension;
    b.spacing = spacing;
    b.sinh_val = s;
    b.cosh_val = c;
    b.cosh_m1 = cm1;
    b.denom = denom;
    b.eta = numer / (2.0 * denom);
    b.e_tilde = tension / (2.0 * denom);
    b.eta_bar = tension * tension * s / (2.0 * denom);

    b.piece_r = b.e_tilde;
    b.piece_a = t * c / denom;
    b.piece_b = -0.5 * tension * (c * cm1 + s * s) / (denom * cm1);
    b.piece_cbar = 0.25 * (std::exp(-t) * cm1 - s * std::expm1(-t)) / (denom * cm1);
    b.piece_q = -0.25 * (std::exp(t) * cm1 + s * std::expm1(t)) / (denom * cm1);

    if (!std::isfinite(b.eta) || !std::isfinite(b.e_tilde) || !std::isfinite(b.eta_bar) ||
        !std::isfinite(b.piece_b) || !std::isfinite(b.piece_cbar) || !std::isfinite(b.piece_q))
        throw std::range_error("rho*h_x = " + std::to_string(t) +
                               " produced non-finite basis constants");
    return b;
}

BasisValue evaluate_basis(const BasisConstants& constants, const SpatialGrid& grid,
                          std::ptrdiff_t index, double point) {
    if (!std::isfinite(point))
        throw std::invalid_argument("basis evaluation point must be finite");

    const double rho = constants.tension;
    const double h = constants.spacing;
    const double center = grid.node(index);
    const double d = point - center;
    if (d <= -2.0 * h || d >= 2.0 * h) return {0.0, 0.0, 0.0};

    const double r = constants.piece_r;
    if (d <= -h) {
        // u = x_{m-2} - x runs from 0 to -h across the branch.
        const double u = (center - 2.0 * h) - point;
        const double t = rho * u;
        return {-sinh_minus_arg(t) / (2.0 * constants.denom),
                r * cosh_minus_one(t),
                -r * rho * std::sinh(t)};
    }
    if (d >= h) {
        const double u = point - (center + 2.0 * h);
        const double t = rho * u;
        return {-sinh_minus_arg(t) / (2.0 * constants.denom),
                -r * cosh_minus_one(t),
                -r * rho * std::sinh(t)};
    }

    // Central branches, grouped so every term stays on the scale of the
    // result (the raw piece coefficients are O((rho h)^{-3}) and would wipe
    // out the value for small tension). Shared in u = |x - x_m| up to the
    // sign of the first derivative.
    const double u = std::abs(d);
    const double t = rho * u;
    const double sd = constants.sinh_val / constants.denom;
    const double ps = (1.0 + 2.0 * constants.cosh_val) / (2.0 * constants.denom);
    const double value = 1.0 - sd * cosh_minus_one(t) + ps * sinh_minus_arg(t);
    double d1 = rho * (ps * cosh_minus_one(t) - sd * std::sinh(t));
    if (d < 0.0) d1 = -d1;
    const double d2 = rho * rho * (ps * std::sinh(t) - sd * std::cosh(t));
    return {value, d1, d2};
}

double reconstruct(std::span<const double> coefficients, const BasisConstants& constants,
                   const SpatialGrid& grid, double point) {
    const std::size_t expected = grid.node_count() + 2;
    if (coefficients.size() != expected)
        throw std::invalid_argument("reconstruct expects " + std::to_string(expected) +
                                    " coefficients, got " + std::to_string(coefficients.size()));

    // Only basis functions with |point - x_m| < 2h contribute.
    const double offset = (point - grid.left()) / constants.spacing;
    const auto first = static_cast<std::ptrdiff_t>(std::floor(offset)) - 2;
    const auto last_index = static_cast<std::ptrdiff_t>(grid.intervals()) + 1;

    double sum = 0.0;
    for (std::ptrdiff_t m = first; m <= first + 5; ++m) {
        if (m < -1 || m > last_index) continue;
        const double coeff = coefficients[static_cast<std::size_t>(m + 1)];
        sum += coeff * evaluate_basis(constants, grid, m, point).value;
    }
    return sum;
}

}  // namespace tfbs
