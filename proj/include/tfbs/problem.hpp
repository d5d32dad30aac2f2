#pragma once

#include <functional>
#include <optional>
#include <utility>

namespace tfbs {

// One instance of the transformed pricing equation on (left, right) x (0, horizon):
//
//   D_t^mu u = diffusion * u_xx + drift * u_x - reaction * u + source,
//   u(x, 0) = initial(x),  u(left, t) = left_boundary(t),  u(right, t) = right_boundary(t),
//
// where D_t^mu is the Caputo derivative of order mu in (0, 1]. diffusion and
// reaction must be positive. initial_deriv carries z'(left), z'(right) for
// the spline end conditions; when absent the solver falls back to one-sided
// fourth-order differences of `initial` on the grid (payoffs have kinks, so
// an analytic derivative is not always available).
struct ProblemSpec {
    double diffusion = 0.0;  // alpha
    double drift = 0.0;      // beta
    double reaction = 0.0;   // gamma
    std::function<double(double, double)> source;  // psi(x, t)
    std::function<double(double)> initial;         // z(x)
    std::optional<std::pair<double, double>> initial_deriv;
    std::function<double(double)> left_boundary;   // H(t)
    std::function<double(double)> right_boundary;  // G(t)
    double domain_left = 0.0;   // I_p
    double domain_right = 0.0;  // F_p
    double horizon = 0.0;       // T~
};

}  // namespace tfbs
