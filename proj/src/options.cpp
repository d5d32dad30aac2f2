#include "tfbs/options.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tfbs {

namespace {

void validate(const OptionModel& model) {
    if (!(model.volatility > 0.0) || !std::isfinite(model.volatility)) {
        throw std::domain_error("volatility must be positive, got " +
                                std::to_string(model.volatility));
    }
    if (!(model.rate > 0.0) || !std::isfinite(model.rate)) {
        throw std::domain_error("rate must be positive (it becomes the reaction coefficient), "
                                "got " +
                                std::to_string(model.rate));
    }
    if (model.dividend_yield < 0.0 || !std::isfinite(model.dividend_yield)) {
        throw std::domain_error("dividend yield must be nonnegative, got " +
                                std::to_string(model.dividend_yield));
    }
    if (!(model.strike > 0.0) || !std::isfinite(model.strike)) {
        throw std::domain_error("strike must be positive, got " + std::to_string(model.strike));
    }
    if (!(model.expiry > 0.0) || !std::isfinite(model.expiry)) {
        throw std::domain_error("expiry must be positive, got " + std::to_string(model.expiry));
    }
    if (!(model.price_bounds.first > 0.0)) {
        throw std::domain_error("left price bound must be positive for the log transform, got " +
                                std::to_string(model.price_bounds.first));
    }
    if (!(model.price_bounds.second > model.price_bounds.first) ||
        !std::isfinite(model.price_bounds.second)) {
        throw std::domain_error("price bounds must satisfy 0 < left < right");
    }
}

}  // namespace

ProblemSpec to_log_space(const OptionModel& model) {
    validate(model);
    const double strike = model.strike;
    const double rate = model.rate;
    const double right_edge = model.price_bounds.second;

    ProblemSpec spec;
    spec.diffusion = 0.5 * model.volatility * model.volatility;
    spec.drift = model.rate - model.dividend_yield - spec.diffusion;
    spec.reaction = model.rate;
    spec.source = [](double, double) { return 0.0; };
    spec.domain_left = std::log(model.price_bounds.first);
    spec.domain_right = std::log(model.price_bounds.second);
    spec.horizon = model.expiry;
    spec.initial_deriv = std::nullopt;

    switch (model.kind) {
        case OptionKind::call:
            spec.initial = [strike](double x) { return std::max(std::exp(x) - strike, 0.0); };
            spec.left_boundary = [](double) { return 0.0; };
            spec.right_boundary = [strike, rate, right_edge](double t) {
                return right_edge - strike * std::exp(-rate * t);
            };
            break;
        case OptionKind::put:
            spec.initial = [strike](double x) { return std::max(strike - std::exp(x), 0.0); };
            spec.left_boundary = [strike, rate](double t) {
                return strike * std::exp(-rate * t);
            };
            spec.right_boundary = [](double) { return 0.0; };
            break;
        case OptionKind::double_barrier_call:
            spec.initial = [strike](double x) { return std::max(std::exp(x) - strike, 0.0); };
            spec.left_boundary = [](double) { return 0.0; };
            spec.right_boundary = [](double) { return 0.0; };
            break;
    }
    return spec;
}

PriceSurface from_log_space(const SolveResult& result, const OptionModel& model) {
    validate(model);
    const double expect_left = std::log(model.price_bounds.first);
    const double expect_right = std::log(model.price_bounds.second);
    if (result.grid.left() != expect_left || result.grid.right() != expect_right ||
        result.horizon != model.expiry) {
        throw std::invalid_argument(
            "solve result does not come from this option model: domain or horizon differs");
    }

    const std::size_t nodes = result.grid.node_count();
    const std::size_t steps = result.time_count;
    PriceSurface surface;
    surface.price_nodes.resize(nodes);
    for (std::size_t m = 0; m < nodes; ++m) {
        surface.price_nodes[m] = std::exp(result.grid.node(static_cast<std::ptrdiff_t>(m)));
    }
    surface.time_nodes.resize(steps + 1);
    for (std::size_t n = 0; n <= steps; ++n) {
        surface.time_nodes[n] = result.time_step() * static_cast<double>(n);
    }
    // tau counts forward from today, the solver time t backward from expiry.
    surface.prices.assign(nodes, std::vector<double>(steps + 1));
    for (std::size_t m = 0; m < nodes; ++m) {
        for (std::size_t n = 0; n <= steps; ++n) {
            surface.prices[m][n] = result.value(m, steps - n);
        }
    }
    return surface;
}

}  // namespace tfbs
