#include "tfbs/l1_caputo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tfbs {

L1Weights l1_weights(double order, std::size_t count, double time_step) {
    if (!(order > 0.0) || !(order <= 1.0) || !std::isfinite(order))
        throw std::domain_error("fractional order mu must lie in (0, 1]");
    if (count == 0)
        throw std::invalid_argument("weight count must be positive");
    if (!(time_step > 0.0) || !std::isfinite(time_step))
        throw std::invalid_argument("time step must be positive and finite");

    L1Weights w;
    w.order = order;
    w.time_step = time_step;
    w.gamma_factor = std::exp(std::lgamma(2.0 - order)) * std::pow(time_step, order);

    const double s = 1.0 - order;
    w.weights.resize(count);
    // k = 0 yields 1 - 0^s; written out to stay exact at mu = 1 where
    // std::pow(0, 0) would return 1.
    w.weights[0] = 1.0;
    for (std::size_t k = 1; k < count; ++k)
        w.weights[k] = std::pow(static_cast<double>(k + 1), s) - std::pow(static_cast<double>(k), s);
    return w;
}

namespace {

void check_history_args(const L1Weights& weights, const CoefficientHistory& history,
                        std::size_t step, std::span<double> out) {
    if (step >= history.steps())
        throw std::invalid_argument("history term requested past the stored steps");
    if (step >= weights.weights.size())
        throw std::invalid_argument("history term requires weights w_0..w_n");
    if (out.size() != history.node_count())
        throw std::invalid_argument("history term output size mismatch");
}

// The k-loop runs outermost so each pass streams two contiguous steps.
// Every component accumulates in ascending k regardless of how the range
// [begin, end) is sliced across threads.
void accumulate_range(const L1Weights& weights, const CoefficientHistory& history,
                      std::size_t step, std::span<double> out,
                      std::size_t begin, std::size_t end) {
    const auto last = history.step(step);
    std::copy(last.begin() + begin, last.begin() + end, out.begin() + begin);
    for (std::size_t k = 1; k <= step; ++k) {
        const double wk = weights.weights[k];
        const auto newer = history.step(step - k + 1);
        const auto older = history.step(step - k);
        for (std::size_t m = begin; m < end; ++m)
            out[m] -= wk * (newer[m] - older[m]);
    }
}

}  // namespace

void history_term_serial(const L1Weights& weights, const CoefficientHistory& history,
                         std::size_t step, std::span<double> out) {
    check_history_args(weights, history, step, out);
    accumulate_range(weights, history, step, out, 0, out.size());
}

void history_term_into(const L1Weights& weights, const CoefficientHistory& history,
                       std::size_t step, std::span<double> out) {
    check_history_args(weights, history, step, out);
#ifdef _OPENMP
    const std::size_t n = out.size();
    #pragma omp parallel
    {
        const auto threads = static_cast<std::size_t>(omp_get_num_threads());
        const auto rank = static_cast<std::size_t>(omp_get_thread_num());
        const std::size_t chunk = (n + threads - 1) / threads;
        const std::size_t begin = std::min(rank * chunk, n);
        const std::size_t end = std::min(begin + chunk, n);
        if (begin < end) accumulate_range(weights, history, step, out, begin, end);
    }
#else
    accumulate_range(weights, history, step, out, 0, out.size());
#endif
}

std::vector<double> history_term(const L1Weights& weights, const CoefficientHistory& history,
                                 std::size_t step) {
    std::vector<double> out(history.node_count());
    history_term_into(weights, history, step, out);
    return out;
}

}  // namespace tfbs
