#pragma once

#include <cstddef>
#include <span>

#include "tfbs/grid.hpp"

namespace tfbs {

// Constants of the exponential B-spline Q_m with tension rho on a uniform
// grid of spacing h. Q_m is supported on [x_{m-2}, x_{m+2}], is C^2, and is
// normalised so that Q_m(x_m) = 1.
//
// Nodal values (the only data the collocation scheme needs):
//   Q_m(x_{m+-1})   = eta     = (sinh(rho h) - rho h) / (2 (rho h cosh(rho h) - sinh(rho h)))
//   Q_m'(x_{m+-1})  = -+ e_tilde (cosh(rho h) - 1),  e_tilde = rho / (2 (rho h cosh(rho h) - sinh(rho h)))
//   Q_m''(x_m)      = -2 eta_bar
//   Q_m''(x_{m+-1}) = eta_bar = rho^2 sinh(rho h) / (2 (rho h cosh(rho h) - sinh(rho h)))
//
// piece_r/a/b/cbar/q are the coefficients of the four non-zero branches:
//   [x_{m-2}, x_{m-1}]: r (x_{m-2} - x) - (r/rho) sinh(rho (x_{m-2} - x))
//   [x_{m-1}, x_m   ]: a + b (x_m - x) + cbar e^{rho (x_m - x)} + q e^{-rho (x_m - x)}
//   [x_m,     x_{m+1}]: mirror of the previous branch
//   [x_{m+1}, x_{m+2}]: r (x - x_{m+2}) - (r/rho) sinh(rho (x - x_{m+2}))
//
// sinh(rho h) - rho h and rho h cosh(rho h) - sinh(rho h) are O((rho h)^3) and
// cancel catastrophically in double precision, so below a crossover they are
// evaluated by series. The central-branch coefficients a, b, cbar, q each grow
// like (rho h)^{-3} while the branch value stays O(1); evaluate_basis therefore
// never sums them directly but uses the equivalent grouped form
//   1 - (sinh(rho h)/D) (cosh(rho u) - 1)
//     + ((1 + 2 cosh(rho h)) / (2D)) (sinh(rho u) - rho u),
// with D = rho h cosh(rho h) - sinh(rho h), which keeps every term on the
// scale of the result for any tension.
struct BasisConstants {
    double tension;    // rho
    double spacing;    // h
    double sinh_val;   // sinh(rho h)
    double cosh_val;   // cosh(rho h)
    double cosh_m1;    // cosh(rho h) - 1, computed without cancellation
    double denom;      // D = rho h cosh(rho h) - sinh(rho h), series below the crossover
    double eta;
    double e_tilde;
    double eta_bar;
    double piece_r;
    double piece_a;
    double piece_b;
    double piece_cbar;
    double piece_q;

    // First-derivative nodal scale of the reconstruction identity
    // U'(x_m) = deriv_scale() * (R_{m+1} - R_{m-1}).
    double deriv_scale() const noexcept { return e_tilde * cosh_m1; }
};

// Throws std::range_error when rho*h overflows sinh/cosh, and
// std::invalid_argument for non-positive tension or spacing.
BasisConstants basis_constants(double tension, double spacing);

struct BasisValue {
    double value;
    double first_deriv;
    double second_deriv;
};

// Q_index and its first two derivatives at `point`. Valid basis indices run
// -1..N_x+1; the support check makes evaluation exactly zero outside
// (x_{index-2}, x_{index+2}).
BasisValue evaluate_basis(const BasisConstants& constants, const SpatialGrid& grid,
                          std::ptrdiff_t index, double point);

// Spline value sum_m R_m Q_m(point) for coefficients indexed -1..N_x+1
// (length N_x+3). At a node x_j this reduces to
// eta R_{j-1} + R_j + eta R_{j+1}.
double reconstruct(std::span<const double> coefficients, const BasisConstants& constants,
                   const SpatialGrid& grid, double point);

}  // namespace tfbs
