#pragma once

#include <utility>
#include <vector>

#include "tfbs/collocation.hpp"
#include "tfbs/problem.hpp"

namespace tfbs {

enum class OptionKind { call, put, double_barrier_call };

// European option under the time-fractional Black-Scholes dynamics, posed on
// a truncated price window (barrier options use the window as the barriers).
struct OptionModel {
    double volatility = 0.0;      // sigma
    double rate = 0.0;            // r_f, must be positive (it is the reaction coefficient)
    double dividend_yield = 0.0;  // D_Y
    double strike = 0.0;
    double expiry = 0.0;
    std::pair<double, double> price_bounds{0.0, 0.0};  // (xi at left edge, xi at right edge)
    OptionKind kind = OptionKind::call;
};

// Rewrites the pricing problem in log-price x = ln(xi) and remaining-time
// t = expiry - tau, where the PDE has constant coefficients:
//   diffusion sigma^2/2, drift r_f - D_Y - sigma^2/2, reaction r_f, no source.
// The payoff becomes the initial profile; discounted strike boundaries follow
// the option kind. End derivatives of the payoff are left unset on purpose:
// the kink makes closed forms misleading, the difference fallback is enough.
ProblemSpec to_log_space(const OptionModel& model);

// Prices on the original axes: price_nodes are exponentials of the grid
// nodes, time_nodes run forward in time-to-expiry tau (tau = 0 is "today",
// i.e. the solver's final step).
struct PriceSurface {
    std::vector<std::vector<double>> prices;  // prices[m][n] = V(price_nodes[m], time_nodes[n])
    std::vector<double> price_nodes;
    std::vector<double> time_nodes;
};

PriceSurface from_log_space(const SolveResult& result, const OptionModel& model);

}  // namespace tfbs
