#pragma once

#include <cstdint>
#include <functional>

#include "tfbs/problem.hpp"

namespace tfbs {

// A ProblemSpec bundled with the exact solution it was manufactured from.
// The source term is chosen so that `exact` satisfies the PDE identically,
// which turns any solver run into an exact error measurement.
struct ManufacturedProblem {
    ProblemSpec spec;
    std::function<double(double, double)> exact;  // u(x, t)
    double order = 1.0;  // mu the source term was built for
};

// Three built-in test problems on (0,1) x (0,1], all with polynomial exact
// solutions:
//   1: u = (t+1)^2 x^2 (1-x),    alpha = 0.03125, beta = 0.01875, gamma = 0.05
//   2: u = (t+1)^2 (1+x^2+x^3),  alpha = 1,       beta = -0.5,    gamma = 0.5
//   3: u = (t^3+1) x^4 (x-1),    alpha = 0.32,    beta = -0.3,    gamma = 0.02
// `order` is the fractional order mu of the time derivative; it enters the
// source term through the gamma-function factors.
ManufacturedProblem example_problem(int id, double order);

// Largest PDE residual |D_t^mu u - alpha u_xx - beta u_x + gamma u - psi|
// over `samples` random interior points, with every derivative evaluated
// numerically and independently of the solver: high-order differences in
// space and time, adaptive quadrature for the fractional derivative. Guards
// against transcription slips in the source terms.
double residual_check(const ManufacturedProblem& problem, std::size_t samples,
                      std::uint64_t seed = 0x5eed5eedULL);

}  // namespace tfbs
