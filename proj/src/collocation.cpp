#include "tfbs/collocation.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "tfbs/errors.hpp"
#include "tfbs/thomas.hpp"

namespace tfbs {

namespace {

void require_finite_problem(const ProblemSpec& problem) {
    if (!(problem.diffusion > 0.0) || !std::isfinite(problem.diffusion)) {
        throw std::domain_error("diffusion coefficient must be positive and finite, got " +
                                std::to_string(problem.diffusion));
    }
    if (!(problem.reaction > 0.0) || !std::isfinite(problem.reaction)) {
        throw std::domain_error("reaction coefficient must be positive and finite, got " +
                                std::to_string(problem.reaction));
    }
    if (!std::isfinite(problem.drift)) {
        throw std::domain_error("drift coefficient must be finite");
    }
    if (!(problem.horizon > 0.0) || !std::isfinite(problem.horizon)) {
        throw std::domain_error("time horizon must be positive and finite, got " +
                                std::to_string(problem.horizon));
    }
}

void require_matching_domain(const ProblemSpec& problem, const SpatialGrid& grid) {
    if (grid.left() != problem.domain_left || grid.right() != problem.domain_right) {
        throw std::invalid_argument("grid endpoints [" + std::to_string(grid.left()) + ", " +
                                    std::to_string(grid.right()) +
                                    "] do not match the problem domain [" +
                                    std::to_string(problem.domain_left) + ", " +
                                    std::to_string(problem.domain_right) + "]");
    }
}

// End-point derivatives of the payoff/initial profile. Uses the supplied pair
// when the caller knows them in closed form, otherwise falls back to one-sided
// differences whose order is capped by how many nodes the grid has.
std::pair<double, double> end_derivatives(const ProblemSpec& problem, const SpatialGrid& grid) {
    if (problem.initial_deriv) {
        return *problem.initial_deriv;
    }
    const double h = grid.spacing();
    const auto n = static_cast<std::ptrdiff_t>(grid.intervals());
    auto z = [&](std::ptrdiff_t m) { return problem.initial(grid.node(m)); };
    if (n >= 4) {
        const double left =
            (-25.0 * z(0) + 48.0 * z(1) - 36.0 * z(2) + 16.0 * z(3) - 3.0 * z(4)) / (12.0 * h);
        const double right =
            (25.0 * z(n) - 48.0 * z(n - 1) + 36.0 * z(n - 2) - 16.0 * z(n - 3) + 3.0 * z(n - 4)) /
            (12.0 * h);
        return {left, right};
    }
    if (n == 3) {
        const double left = (-11.0 * z(0) + 18.0 * z(1) - 9.0 * z(2) + 2.0 * z(3)) / (6.0 * h);
        const double right = (11.0 * z(n) - 18.0 * z(n - 1) + 9.0 * z(n - 2) - 2.0 * z(n - 3)) / (6.0 * h);
        return {left, right};
    }
    const double left = (-3.0 * z(0) + 4.0 * z(1) - z(2)) / (2.0 * h);
    const double right = (3.0 * z(n) - 4.0 * z(n - 1) + z(n - 2)) / (2.0 * h);
    return {left, right};
}

struct Bands {
    std::vector<double> lower, diag, upper;
};

// Collocation matrix after the two ghost coefficients have been eliminated
// into the first and last rows.
Bands scheme_bands(const SchemeCoefficients& c, std::size_t nodes) {
    Bands b;
    b.lower.assign(nodes, c.chi1);
    b.diag.assign(nodes, c.chi2);
    b.upper.assign(nodes, c.chi3);
    b.diag.front() = c.edge1;
    b.upper.front() = c.edge2;
    b.lower.back() = -c.edge2;
    b.diag.back() = c.edge3;
    return b;
}

// vals[j] holds a boundary trace at time node j. Returns the L1 memory term
// of that trace at step n: vals[n] - sum_{k=1..n} w_k (vals[n-k+1] - vals[n-k]).
double telescoped_boundary(std::span<const double> vals, std::span<const double> weights,
                           std::size_t n) {
    double acc = vals[n];
    for (std::size_t k = 1; k <= n; ++k) {
        acc -= weights[k] * (vals[n - k + 1] - vals[n - k]);
    }
    return acc;
}

// Right-hand side of the step-(n+1) system. hist[m] is the nodal memory term
// of the coefficient functions, bvals the boundary traces at nodes 0..n+1.
void assemble_rhs(const ProblemSpec& problem, const SchemeCoefficients& c, const L1Weights& weights,
                  const SpatialGrid& grid, std::span<const double> hist,
                  std::span<const double> left_vals, std::span<const double> right_vals,
                  std::size_t n, std::span<double> out) {
    const std::size_t last = grid.intervals();
    const double t_next = weights.time_step * static_cast<double>(n + 1);
    for (std::size_t m = 1; m < last; ++m) {
        out[m] = c.eta * hist[m - 1] + hist[m] + c.eta * hist[m + 1] +
                 c.gamma_factor * problem.source(grid.node(static_cast<std::ptrdiff_t>(m)), t_next);
    }
    out[0] = telescoped_boundary(left_vals, weights.weights, n) -
             (c.chi1 / c.eta) * left_vals[n + 1] +
             c.gamma_factor * problem.source(grid.left(), t_next);
    out[last] = telescoped_boundary(right_vals, weights.weights, n) -
                (c.chi3 / c.eta) * right_vals[n + 1] +
                c.gamma_factor * problem.source(grid.right(), t_next);
}

std::pair<double, double> recover_ghosts(double eta, std::span<const double> r, double left_value,
                                         double right_value) {
    const std::size_t last = r.size() - 1;
    const double left_ghost = (left_value - r[0] - eta * r[1]) / eta;
    const double right_ghost = (right_value - r[last] - eta * r[last - 1]) / eta;
    return {left_ghost, right_ghost};
}

void check_step_finite(std::span<const double> r, std::size_t step_index) {
    for (double v : r) {
        if (!std::isfinite(v)) {
            throw SolverFailure("non-finite coefficient produced by time step", step_index);
        }
    }
}

std::vector<double> boundary_trace(const std::function<double(double)>& fn, double time_step,
                                   std::size_t count) {
    std::vector<double> vals(count);
    for (std::size_t j = 0; j < count; ++j) {
        vals[j] = fn(time_step * static_cast<double>(j));
    }
    return vals;
}

void warn_if_incompatible(const ProblemSpec& problem) {
    const auto check = [&](double corner, double boundary, const char* side) {
        const double scale = std::max({1.0, std::abs(corner), std::abs(boundary)});
        if (std::abs(corner - boundary) > 1e-8 * scale) {
            std::cerr << "warning: initial data and " << side
                      << " boundary disagree at t = 0 (payoff " << corner << ", boundary "
                      << boundary << "); the corner follows the initial data\n";
        }
    };
    check(problem.initial(problem.domain_left), problem.left_boundary(0.0), "left");
    check(problem.initial(problem.domain_right), problem.right_boundary(0.0), "right");
}

}  // namespace

SchemeCoefficients scheme_coefficients(const ProblemSpec& problem, const BasisConstants& basis,
                                       const L1Weights& weights) {
    require_finite_problem(problem);
    SchemeCoefficients c;
    c.eta = basis.eta;
    c.gamma_factor = weights.gamma_factor;
    const double diffuse = problem.diffusion * c.gamma_factor * basis.eta_bar;
    const double advect = problem.drift * c.gamma_factor * basis.deriv_scale();
    const double react = problem.reaction * c.gamma_factor;
    c.chi1 = basis.eta - diffuse + advect + basis.eta * react;
    c.chi2 = 1.0 + 2.0 * diffuse + react;
    c.chi3 = basis.eta - diffuse - advect + basis.eta * react;
    c.edge1 = c.chi2 - c.chi1 / basis.eta;
    c.edge2 = c.chi3 - c.chi1;
    c.edge3 = c.chi2 - c.chi3 / basis.eta;
    return c;
}

InitialState solve_initial_state(const ProblemSpec& problem, const BasisConstants& basis,
                                 const SpatialGrid& grid) {
    require_matching_domain(problem, grid);
    const std::size_t nodes = grid.node_count();
    const auto [dl, dr] = end_derivatives(problem, grid);
    const double scale = basis.deriv_scale();

    std::vector<double> lower(nodes, basis.eta);
    std::vector<double> diag(nodes, 1.0);
    std::vector<double> upper(nodes, basis.eta);
    upper.front() = 2.0 * basis.eta;
    lower.back() = 2.0 * basis.eta;

    std::vector<double> rhs(nodes);
    for (std::size_t m = 0; m < nodes; ++m) {
        rhs[m] = problem.initial(grid.node(static_cast<std::ptrdiff_t>(m)));
    }
    rhs.front() += basis.eta * dl / scale;
    rhs.back() -= basis.eta * dr / scale;

    InitialState state;
    state.coefficients = thomas_solve(lower, diag, upper, rhs);
    state.ghosts.first = state.coefficients[1] - dl / scale;
    state.ghosts.second = state.coefficients[nodes - 2] + dr / scale;
    return state;
}

std::vector<double> step(const ProblemSpec& problem, const SchemeCoefficients& coeffs,
                         const L1Weights& weights, CoefficientHistory& history, std::size_t n) {
    if (history.steps() == 0) {
        throw std::invalid_argument("history must hold the initial state before stepping");
    }
    if (n + 1 != history.steps()) {
        throw std::invalid_argument("step index " + std::to_string(n) +
                                    " does not follow the " + std::to_string(history.steps()) +
                                    " states already recorded");
    }
    const std::size_t nodes = history.node_count();
    SpatialGrid grid(problem.domain_left, problem.domain_right, nodes - 1);

    const auto left_vals = boundary_trace(problem.left_boundary, weights.time_step, n + 2);
    const auto right_vals = boundary_trace(problem.right_boundary, weights.time_step, n + 2);

    std::vector<double> hist = history_term(weights, history, n);
    std::vector<double> rhs(nodes);
    assemble_rhs(problem, coeffs, weights, grid, hist, left_vals, right_vals, n, rhs);

    const Bands bands = scheme_bands(coeffs, nodes);
    std::vector<double> next = thomas_solve(bands.lower, bands.diag, bands.upper, rhs);
    check_step_finite(next, n + 1);

    const auto [gl, gr] = recover_ghosts(coeffs.eta, next, left_vals[n + 1], right_vals[n + 1]);
    history.push(next, gl, gr);
    return next;
}

SolveResult solve(const ProblemSpec& problem, const SpatialGrid& grid, std::size_t time_count,
                  double order, double tension) {
    require_finite_problem(problem);
    require_matching_domain(problem, grid);
    if (time_count < 1) {
        throw std::domain_error("time step count must be at least 1");
    }

    const auto t_setup_begin = std::chrono::steady_clock::now();
    warn_if_incompatible(problem);

    const double time_step = problem.horizon / static_cast<double>(time_count);
    const BasisConstants basis = basis_constants(tension, grid.spacing());
    const L1Weights weights = l1_weights(order, time_count, time_step);
    const SchemeCoefficients coeffs = scheme_coefficients(problem, basis, weights);

    const std::size_t nodes = grid.node_count();
    const Bands bands = scheme_bands(coeffs, nodes);
    const TridiagonalFactorization factorization(bands.lower, bands.diag, bands.upper);

    const auto left_vals = boundary_trace(problem.left_boundary, time_step, time_count + 1);
    const auto right_vals = boundary_trace(problem.right_boundary, time_step, time_count + 1);

    SolveResult result{grid,
                       time_count,
                       order,
                       tension,
                       problem.horizon,
                       {},
                       CoefficientHistory(nodes),
                       {}};
    result.history.reserve(time_count + 1);
    {
        InitialState initial = solve_initial_state(problem, basis, grid);
        result.history.push(initial.coefficients, initial.ghosts.first, initial.ghosts.second);
    }
    const auto t_march_begin = std::chrono::steady_clock::now();

    std::vector<double> hist(nodes);
    std::vector<double> rhs(nodes);
    for (std::size_t n = 0; n < time_count; ++n) {
        history_term_into(weights, result.history, n, hist);
        assemble_rhs(problem, coeffs, weights, grid, hist, left_vals, right_vals, n, rhs);
        factorization.solve(rhs);
        check_step_finite(rhs, n + 1);
        const auto [gl, gr] = recover_ghosts(coeffs.eta, rhs, left_vals[n + 1], right_vals[n + 1]);
        result.history.push(rhs, gl, gr);
    }
    const auto t_reconstruct_begin = std::chrono::steady_clock::now();

    // Nodal values follow from the (eta, 1, eta) stencil on the coefficients.
    // Boundary rows past t = 0 carry the prescribed traces directly; the
    // stencil reproduces them up to solver roundoff anyway.
    const std::size_t stride = time_count + 1;
    result.values.assign(nodes * stride, 0.0);
    const double eta = basis.eta;
    for (std::size_t n = 0; n <= time_count; ++n) {
        const auto r = result.history.step(n);
        const auto [gl, gr] = result.history.ghosts(n);
        result.values[0 * stride + n] =
            n == 0 ? eta * gl + r[0] + eta * r[1] : left_vals[n];
        for (std::size_t m = 1; m + 1 < nodes; ++m) {
            result.values[m * stride + n] = eta * r[m - 1] + r[m] + eta * r[m + 1];
        }
        result.values[(nodes - 1) * stride + n] =
            n == 0 ? eta * r[nodes - 2] + r[nodes - 1] + eta * gr : right_vals[n];
    }
    const auto t_end = std::chrono::steady_clock::now();

    result.timings.setup = t_march_begin - t_setup_begin;
    result.timings.march = t_reconstruct_begin - t_march_begin;
    result.timings.reconstruct = t_end - t_reconstruct_begin;
    return result;
}

}  // namespace tfbs
