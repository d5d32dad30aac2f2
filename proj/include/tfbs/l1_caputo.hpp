#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tfbs/history.hpp"

namespace tfbs {

// L1 quadrature weights for the Caputo derivative of order mu in (0, 1]:
// w_k = (k+1)^{1-mu} - k^{1-mu}. They satisfy w_0 = 1, w_k > 0, strict
// decrease, and the telescoping identity
// sum_{k=0}^{n} (w_k - w_{k+1}) + w_{n+1} = 1.
// At mu = 1 every w_k with k >= 1 vanishes and the march degenerates to a
// one-step backward difference.
struct L1Weights {
    double order;                 // mu
    double time_step;             // h_t
    double gamma_factor;          // Gamma(2-mu) * h_t^mu
    std::vector<double> weights;  // w_0..w_{count-1}
};

// Throws std::domain_error for mu outside (0, 1], std::invalid_argument for
// count = 0 or non-positive time step.
L1Weights l1_weights(double order, std::size_t count, double time_step);

// Memory term of the marching scheme at step n:
//   R^n - sum_{k=1}^{n} w_k (R^{n-k+1} - R^{n-k}),
// componentwise over the stored coefficient vectors. `out` must have
// history.node_count() entries. Parallelised over components; the per-
// component summation order is fixed, so results are identical for any
// thread count.
void history_term_into(const L1Weights& weights, const CoefficientHistory& history,
                       std::size_t step, std::span<double> out);

std::vector<double> history_term(const L1Weights& weights, const CoefficientHistory& history,
                                 std::size_t step);

// Single-threaded reference used by the equivalence tests and as the
// benchmark baseline.
void history_term_serial(const L1Weights& weights, const CoefficientHistory& history,
                         std::size_t step, std::span<double> out);

}  // namespace tfbs
