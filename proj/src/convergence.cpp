#include "tfbs/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tfbs {

namespace {

std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5e", v);
    return buf;
}

double eoc(double coarse, double fine) { return std::log2(coarse / fine); }

}  // namespace

ErrorReport error_norms(const SolveResult& result,
                        const std::function<double(double, double)>& exact) {
    const std::size_t last = result.grid.intervals();
    const double hx = result.grid.spacing();
    const auto steps = static_cast<std::ptrdiff_t>(result.time_count);

    double linf = 0.0;
    double l2sq = 0.0;
// Each time level is independent; max is exact under reassociation and the
// per-level sum keeps a fixed order, so the result does not depend on the
// thread count.
#ifdef _OPENMP
#pragma omp parallel for reduction(max : linf, l2sq) schedule(static)
#endif
    for (std::ptrdiff_t n = 1; n <= steps; ++n) {
        const double t = result.node_time(static_cast<std::size_t>(n));
        double level_sq = 0.0;
        for (std::size_t m = 1; m < last; ++m) {
            const double diff = exact(result.grid.node(static_cast<std::ptrdiff_t>(m)), t) -
                                result.value(m, static_cast<std::size_t>(n));
            linf = std::max(linf, std::abs(diff));
            level_sq += diff * diff;
        }
        l2sq = std::max(l2sq, level_sq);
    }

    ErrorReport report;
    report.l_inf = linf;
    report.l_2 = std::sqrt(hx * l2sq);
    report.space_intervals = last;
    report.time_steps = result.time_count;
    report.order = result.order;
    report.tension = result.tension;
    report.runtime = result.timings.total();
    return report;
}

EOCLadder eoc_ladder(const ManufacturedProblem& problem, const LadderConfig& config,
                     std::span<const std::size_t> levels, unsigned jobs) {
    if (levels.size() < 2) {
        throw std::domain_error("an EOC ladder needs at least two levels");
    }
    for (std::size_t i = 1; i < levels.size(); ++i) {
        if (levels[i] != 2 * levels[i - 1]) {
            throw std::domain_error("ladder levels must double, got " +
                                    std::to_string(levels[i - 1]) + " then " +
                                    std::to_string(levels[i]));
        }
    }
    if (config.fixed < 1) {
        throw std::domain_error("the fixed dimension must have at least one interval");
    }

    EOCLadder ladder;
    ladder.direction = config.axis;
    ladder.label = config.label;
    ladder.order = problem.order;
    ladder.tension = config.tension;
    ladder.rows.resize(levels.size());

    const auto run_level = [&](std::size_t i) {
        const bool in_time = config.axis == RefinementAxis::time;
        const std::size_t nx = in_time ? config.fixed : levels[i];
        const std::size_t nt = in_time ? levels[i] : config.fixed;
        const SpatialGrid grid(problem.spec.domain_left, problem.spec.domain_right, nx);
        const SolveResult result = solve(problem.spec, grid, nt, problem.order, config.tension);
        const ErrorReport report = error_norms(result, problem.exact);
        LadderRow& row = ladder.rows[i];
        row.space_intervals = nx;
        row.time_steps = nt;
        row.l_2 = report.l_2;
        row.l_inf = report.l_inf;
        row.runtime = report.runtime;
    };

    const auto count = static_cast<std::ptrdiff_t>(levels.size());
#ifdef _OPENMP
    if (jobs > 0) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(static_cast<int>(jobs))
        for (std::ptrdiff_t i = 0; i < count; ++i) {
            run_level(static_cast<std::size_t>(i));
        }
    } else {
#pragma omp parallel for schedule(dynamic, 1)
        for (std::ptrdiff_t i = 0; i < count; ++i) {
            run_level(static_cast<std::size_t>(i));
        }
    }
#else
    (void)jobs;
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        run_level(static_cast<std::size_t>(i));
    }
#endif

    for (std::size_t i = 1; i < ladder.rows.size(); ++i) {
        ladder.rows[i].eoc_l2 = eoc(ladder.rows[i - 1].l_2, ladder.rows[i].l_2);
        ladder.rows[i].eoc_linf = eoc(ladder.rows[i - 1].l_inf, ladder.rows[i].l_inf);
    }
    return ladder;
}

double amplification_margin(const ProblemSpec& problem, const BasisConstants& basis,
                            const L1Weights& weights, std::span<const double> wave_numbers) {
    const double gf = weights.gamma_factor;
    const double h = basis.spacing;
    double margin = std::numeric_limits<double>::infinity();
    for (const double w : wave_numbers) {
        const double c = std::cos(w * h);
        const double s = std::sin(w * h);
        const double y1 = 1.0 + 2.0 * basis.eta * c;
        const double y2 = 2.0 * problem.diffusion * gf * basis.eta_bar * (1.0 - c);
        const double y3 = problem.reaction * gf * y1;
        const double y4 = 2.0 * problem.drift * gf * basis.deriv_scale() * s;
        const double sum = y1 + y2 + y3;
        margin = std::min(margin, sum * sum + y4 * y4 - y1 * y1);
    }
    return margin;
}

std::string table_report(std::span<const EOCLadder> ladders) {
    std::string out = "example,mu,rho,nx,nt,l2,eoc_l2,linf,eoc_linf,runtime_ms\n";
    for (const EOCLadder& ladder : ladders) {
        for (const LadderRow& row : ladder.rows) {
            out += std::to_string(ladder.label);
            out += ',';
            out += format_real(ladder.order);
            out += ',';
            out += format_real(ladder.tension);
            out += ',';
            out += std::to_string(row.space_intervals);
            out += ',';
            out += std::to_string(row.time_steps);
            out += ',';
            out += format_real(row.l_2);
            out += ',';
            if (row.eoc_l2) {
                out += format_real(*row.eoc_l2);
            }
            out += ',';
            out += format_real(row.l_inf);
            out += ',';
            if (row.eoc_linf) {
                out += format_real(*row.eoc_linf);
            }
            out += ',';
            out += format_real(row.runtime.count() * 1e3);
            out += '\n';
        }
    }
    return out;
}

}  // namespace tfbs
