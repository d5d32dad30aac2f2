#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tfbs/collocation.hpp"
#include "tfbs/problems.hpp"

namespace tfbs {

// Discrete error norms over interior space nodes (1..N_x-1) and time nodes
// from 1 on, matching how the reference tables were computed. Including the
// boundary columns would be more conventional but changes the numbers.
struct ErrorReport {
    double l_inf = 0.0;
    double l_2 = 0.0;  // max over time of the weighted spatial l2 norm
    std::size_t space_intervals = 0;
    std::size_t time_steps = 0;
    double order = 0.0;
    double tension = 0.0;
    std::chrono::duration<double> runtime{};
};

ErrorReport error_norms(const SolveResult& result,
                        const std::function<double(double, double)>& exact);

enum class RefinementAxis { time, space };

struct LadderRow {
    std::size_t space_intervals = 0;
    std::size_t time_steps = 0;
    double l_2 = 0.0;
    double l_inf = 0.0;
    std::optional<double> eoc_l2;    // log2 ratio against the previous row
    std::optional<double> eoc_linf;  // empty on the first row
    std::chrono::duration<double> runtime{};
};

struct EOCLadder {
    RefinementAxis direction = RefinementAxis::time;
    int label = 0;  // example id in reports, 0 if not a built-in problem
    double order = 0.0;
    double tension = 0.0;
    std::vector<LadderRow> rows;
};

struct LadderConfig {
    RefinementAxis axis = RefinementAxis::time;
    std::size_t fixed = 0;  // interval count of the dimension that stays put
    double tension = 1.0;
    int label = 0;
};

// Runs the solver over `levels` (sizes of the refined dimension, each double
// the last) and tabulates errors with their empirical orders. The fractional
// order comes from the problem itself since its source term depends on it.
// Levels are independent solves; `jobs` > 0 caps how many run concurrently,
// 0 leaves the choice to the runtime. Rows always come back in level order.
EOCLadder eoc_ladder(const ManufacturedProblem& problem, const LadderConfig& config,
                     std::span<const std::size_t> levels, unsigned jobs = 0);

// Minimum over the sampled wave numbers of
//   (Y1 + Y2 + Y3)^2 + Y4^2 - Y1^2,
// where Y1 = 1 + 2 eta cos(w h), Y2 = 2 alpha gf eta_bar (1 - cos(w h)),
// Y3 = gamma gf Y1-factor, Y4 = 2 beta gf e_tilde (cosh-1) sin(w h). A
// positive value certifies that every Fourier mode is damped by one step.
double amplification_margin(const ProblemSpec& problem, const BasisConstants& basis,
                            const L1Weights& weights, std::span<const double> wave_numbers);

// CSV with columns example,mu,rho,nx,nt,l2,eoc_l2,linf,eoc_linf,runtime_ms.
// Reals use scientific notation with 6 significant digits; the EOC cells of
// each ladder's first row are empty.
std::string table_report(std::span<const EOCLadder> ladders);

}  // namespace tfbs
