#pragma once

#include <chrono>
#include <cstddef>
#include <utility>
#include <vector>

#include "tfbs/grid.hpp"
#include "tfbs/history.hpp"
#include "tfbs/l1_caputo.hpp"
#include "tfbs/problem.hpp"
#include "tfbs/spline_basis.hpp"

namespace tfbs {

// Entries of the per-step tridiagonal system S R^{n+1} = Q(memory term) + B.
//
// Interior collocation rows carry (chi1, chi2, chi3). Eliminating the ghost
// coefficients with the boundary interpolation identities turns the first
// row into (edge1, edge2) and the last into (-edge2, edge3):
//   edge1 = chi2 - chi1/eta, edge2 = chi3 - chi1, edge3 = chi2 - chi3/eta.
// The row sum obeys chi1 + chi2 + chi3 = (1 + 2 eta)(1 + reaction * gamma_factor).
struct SchemeCoefficients {
    double chi1;
    double chi2;
    double chi3;
    double edge1;
    double edge2;
    double edge3;
    double eta;
    double gamma_factor;
};

SchemeCoefficients scheme_coefficients(const ProblemSpec& problem, const BasisConstants& basis,
                                       const L1Weights& weights);

struct InitialState {
    std::vector<double> coefficients;    // R^0, indices 0..N_x
    std::pair<double, double> ghosts;    // R_{-1}^0, R_{N_x+1}^0
};

// Fits the spline to the initial data: interior interpolation rows
// (eta, 1, eta) with the end rows (1, 2 eta) and (2 eta, 1) obtained by
// folding the ghost coefficients into the end-derivative conditions; the
// ghosts are then recovered from those same conditions.
InitialState solve_initial_state(const ProblemSpec& problem, const BasisConstants& basis,
                                 const SpatialGrid& grid);

// Advances one time level: assembles the right-hand side from the memory
// term, the boundary history sums, and the source; solves; recovers the
// step-(n+1) ghosts from the boundary interpolation identities.
std::vector<double> step(const ProblemSpec& problem, const SchemeCoefficients& coefficients,
                         const L1Weights& weights, CoefficientHistory& history, std::size_t n);

struct PhaseTimings {
    std::chrono::duration<double> setup{0.0};        // constants + initial fit
    std::chrono::duration<double> march{0.0};        // time stepping
    std::chrono::duration<double> reconstruct{0.0};  // coefficient-to-value pass
    std::chrono::duration<double> total() const { return setup + march + reconstruct; }
};

// Full space-time solution. values is (N_x+1) x (N_t+1), laid out so
// value(m, n) is the solution at (x_m, t_n). Column 0 is the spline fit of
// the initial data; boundary rows at n >= 1 carry the boundary data exactly
// as evaluated.
struct SolveResult {
    SpatialGrid grid;
    std::size_t time_count = 0;  // N_t
    double order = 0.0;          // mu
    double tension = 0.0;        // rho
    double horizon = 0.0;
    std::vector<double> values;  // row-major, stride N_t+1
    CoefficientHistory history;
    PhaseTimings timings;

    double value(std::size_t m, std::size_t n) const {
        return values[m * (time_count + 1) + n];
    }
    double time_step() const { return horizon / static_cast<double>(time_count); }
    double node_time(std::size_t n) const { return time_step() * static_cast<double>(n); }
};

// Marches the scheme over `time_count` uniform steps of horizon/time_count.
// The grid must span the problem's domain. Throws SolverFailure if a pivot
// degenerates or a step produces non-finite coefficients.
SolveResult solve(const ProblemSpec& problem, const SpatialGrid& grid, std::size_t time_count,
                  double order, double tension);

}  // namespace tfbs
