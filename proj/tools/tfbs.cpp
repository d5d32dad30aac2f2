#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "tfbs/collocation.hpp"
#include "tfbs/convergence.hpp"
#include "tfbs/errors.hpp"
#include "tfbs/options.hpp"
#include "tfbs/problems.hpp"

namespace {

struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5e", v);
    return buf;
}

// Empty path means stdout.
void write_output(const std::string& path, const std::string& data) {
    if (path.empty()) {
        std::cout << data;
        if (!std::cout) {
            throw IoFailure("writing to stdout failed");
        }
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoFailure("cannot open '" + path + "' for writing");
    }
    out << data;
    out.flush();
    if (!out) {
        throw IoFailure("writing to '" + path + "' failed");
    }
}

unsigned default_jobs() {
    if (const char* env = std::getenv("TFBS_JOBS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return static_cast<unsigned>(v);
        }
        std::cerr << "warning: ignoring unparseable TFBS_JOBS='" << env << "'\n";
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

void apply_jobs(unsigned jobs) {
#ifdef _OPENMP
    omp_set_num_threads(static_cast<int>(jobs));
#else
    (void)jobs;
#endif
}

std::vector<double> parse_mu_list(const std::string& text) {
    std::vector<double> out;
    std::size_t begin = 0;
    while (begin <= text.size()) {
        const std::size_t comma = text.find(',', begin);
        const std::string item =
            text.substr(begin, comma == std::string::npos ? comma : comma - begin);
        try {
            std::size_t used = 0;
            const double v = std::stod(item, &used);
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
            out.push_back(v);
        } catch (const std::exception&) {
            throw std::domain_error("--mu: cannot parse '" + item + "' as a number");
        }
        if (comma == std::string::npos) {
            break;
        }
        begin = comma + 1;
    }
    if (out.empty()) {
        throw std::domain_error("--mu: list is empty");
    }
    return out;
}

int run_solve(int example, double mu, double rho, std::size_t nx, std::size_t nt,
              const std::string& out_path) {
    const tfbs::ManufacturedProblem problem = tfbs::example_problem(example, mu);
    const tfbs::SpatialGrid grid(problem.spec.domain_left, problem.spec.domain_right, nx);
    const tfbs::SolveResult result = tfbs::solve(problem.spec, grid, nt, mu, rho);

    std::string csv = "x,t,u,exact,abs_error\n";
    for (std::size_t n = 0; n <= nt; ++n) {
        const double t = result.node_time(n);
        for (std::size_t m = 0; m <= nx; ++m) {
            const double x = grid.node(static_cast<std::ptrdiff_t>(m));
            const double u = result.value(m, n);
            const double exact = problem.exact(x, t);
            csv += fmt(x);
            csv += ',';
            csv += fmt(t);
            csv += ',';
            csv += fmt(u);
            csv += ',';
            csv += fmt(exact);
            csv += ',';
            csv += fmt(std::abs(u - exact));
            csv += '\n';
        }
    }
    write_output(out_path, csv);
    return 0;
}

int run_converge(int example, const std::vector<double>& mus, double rho,
                 const std::vector<std::size_t>& nx_ladder,
                 const std::vector<std::size_t>& nt_ladder, std::size_t nx_fixed,
                 std::size_t nt_fixed, unsigned jobs, const std::string& out_path) {
    const bool in_time = !nt_ladder.empty();
    if (in_time == !nx_ladder.empty()) {
        throw std::domain_error("exactly one of --nt-ladder / --nx-ladder must be given");
    }
    tfbs::LadderConfig config;
    config.axis = in_time ? tfbs::RefinementAxis::time : tfbs::RefinementAxis::space;
    config.fixed = in_time ? nx_fixed : nt_fixed;
    if (config.fixed == 0) {
        throw std::domain_error(in_time ? "--nx is required with --nt-ladder"
                                        : "--nt is required with --nx-ladder");
    }
    config.tension = rho;
    config.label = example;

    std::vector<tfbs::EOCLadder> ladders;
    ladders.reserve(mus.size());
    for (const double mu : mus) {
        const tfbs::ManufacturedProblem problem = tfbs::example_problem(example, mu);
        ladders.push_back(
            tfbs::eoc_ladder(problem, config, in_time ? nt_ladder : nx_ladder, jobs));
    }
    write_output(out_path, tfbs::table_report(ladders));
    return 0;
}

int run_price(const std::string& kind_name, const std::vector<double>& mus, double rho,
              std::size_t nx, std::size_t nt, double sigma, double rate, double dividend,
              double strike, double expiry, double xi_min, double xi_max, unsigned jobs,
              const std::string& out_path) {
    tfbs::OptionModel model;
    model.volatility = sigma;
    model.rate = rate;
    model.dividend_yield = dividend;
    model.strike = strike;
    model.expiry = expiry;
    model.price_bounds = {xi_min, xi_max};
    if (kind_name == "call") {
        model.kind = tfbs::OptionKind::call;
    } else if (kind_name == "put") {
        model.kind = tfbs::OptionKind::put;
    } else {
        model.kind = tfbs::OptionKind::double_barrier_call;
    }

    const tfbs::ProblemSpec spec = tfbs::to_log_space(model);
    const tfbs::SpatialGrid grid(spec.domain_left, spec.domain_right, nx);

    std::vector<tfbs::PriceSurface> surfaces(mus.size());
    const auto count = static_cast<std::ptrdiff_t>(mus.size());
    // One independent solve per order; surfaces land in list position, so the
    // output does not depend on completion order.
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(static_cast<int>(jobs))
#endif
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const tfbs::SolveResult result =
            tfbs::solve(spec, grid, nt, mus[static_cast<std::size_t>(i)], rho);
        surfaces[static_cast<std::size_t>(i)] = tfbs::from_log_space(result, model);
    }

    std::string csv = "mu,xi,tau,price\n";
    for (std::size_t i = 0; i < mus.size(); ++i) {
        const tfbs::PriceSurface& surface = surfaces[i];
        for (std::size_t n = 0; n < surface.time_nodes.size(); ++n) {
            for (std::size_t m = 0; m < surface.price_nodes.size(); ++m) {
                csv += fmt(mus[i]);
                csv += ',';
                csv += fmt(surface.price_nodes[m]);
                csv += ',';
                csv += fmt(surface.time_nodes[n]);
                csv += ',';
                csv += fmt(surface.prices[m][n]);
                csv += '\n';
            }
        }
    }
    write_output(out_path, csv);
    return 0;
}

int run_stability(int example, double mu, double rho, std::size_t nx, std::size_t nt,
                  std::size_t samples, const std::string& out_path) {
    const tfbs::ManufacturedProblem problem = tfbs::example_problem(example, mu);
    const tfbs::ProblemSpec& spec = problem.spec;
    const double width = spec.domain_right - spec.domain_left;
    const double hx = width / static_cast<double>(nx);
    const double ht = spec.horizon / static_cast<double>(nt);

    const tfbs::BasisConstants basis = tfbs::basis_constants(rho, hx);
    const tfbs::L1Weights weights = tfbs::l1_weights(mu, nt, ht);
    std::vector<double> wave_numbers(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        wave_numbers[i] =
            static_cast<double>(i + 1) / static_cast<double>(samples) * 3.141592653589793 / hx;
    }
    const double margin = tfbs::amplification_margin(spec, basis, weights, wave_numbers);

    // March a small smooth disturbance through the homogeneous scheme and
    // check that its maximum never grows.
    const double delta = 1e-6;
    const double pi = 3.141592653589793;
    tfbs::ProblemSpec hom;
    hom.diffusion = spec.diffusion;
    hom.drift = spec.drift;
    hom.reaction = spec.reaction;
    hom.source = [](double, double) { return 0.0; };
    hom.initial = [=](double x) {
        const double s = (x - spec.domain_left) / width;
        return delta * (std::sin(pi * s) + 0.5 * std::sin(3.0 * pi * s));
    };
    hom.initial_deriv = std::pair{2.5 * delta * pi / width, -2.5 * delta * pi / width};
    hom.left_boundary = [](double) { return 0.0; };
    hom.right_boundary = [](double) { return 0.0; };
    hom.domain_left = spec.domain_left;
    hom.domain_right = spec.domain_right;
    hom.horizon = spec.horizon;

    const tfbs::SpatialGrid grid(hom.domain_left, hom.domain_right, nx);
    const tfbs::SolveResult evolved = tfbs::solve(hom, grid, nt, mu, rho);
    double start = 0.0, peak = 0.0;
    for (std::size_t m = 0; m <= nx; ++m) {
        start = std::max(start, std::abs(evolved.value(m, 0)));
    }
    for (std::size_t n = 1; n <= nt; ++n) {
        for (std::size_t m = 0; m <= nx; ++m) {
            peak = std::max(peak, std::abs(evolved.value(m, n)));
        }
    }
    const double ratio = peak / start;
    const bool pass = ratio <= 1.0 + 1e-8;

    std::string text;
    text += "minimum amplification margin over " + std::to_string(samples) +
            " wave numbers: " + fmt(margin) + "\n";
    text += "perturbation decay: ratio " + fmt(ratio) + " -> " + (pass ? "PASS" : "FAIL") + "\n";
    write_output(out_path, text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exponential B-spline collocation solver for the time-fractional "
                 "Black-Scholes equation"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from an INI file");

    unsigned jobs = default_jobs();
    app.add_option("--jobs", jobs, "Worker thread cap (env TFBS_JOBS, default: processors)")
        ->check(CLI::PositiveNumber);

    int example = 1;
    double mu = 0.5;
    std::string mu_list = "0.5";
    double rho = 1.0;
    std::size_t nx = 100, nt = 100;
    std::string out_path;

    auto* solve_cmd = app.add_subcommand("solve", "Solve a built-in problem, write the surface");
    solve_cmd->add_option("--example", example, "Built-in problem id")->check(CLI::Range(1, 3));
    solve_cmd->add_option("--mu", mu, "Fractional order in (0,1]");
    solve_cmd->add_option("--rho", rho, "Spline tension")->check(CLI::PositiveNumber);
    solve_cmd->add_option("--nx", nx, "Space intervals")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 24));
    solve_cmd->add_option("--nt", nt, "Time steps")->check(CLI::PositiveNumber);
    solve_cmd->add_option("--out", out_path, "Output CSV path (default: stdout)");

    auto* conv_cmd = app.add_subcommand("converge", "Refinement study with EOC columns");
    std::vector<std::size_t> nx_ladder, nt_ladder;
    std::size_t nx_fixed = 0, nt_fixed = 0;
    conv_cmd->add_option("--example", example, "Built-in problem id")->check(CLI::Range(1, 3));
    conv_cmd->add_option("--mu", mu_list, "Fractional order, or comma list for several ladders");
    conv_cmd->add_option("--rho", rho, "Spline tension")->check(CLI::PositiveNumber);
    conv_cmd->add_option("--nt-ladder", nt_ladder, "Doubling time-step counts")->delimiter(',');
    conv_cmd->add_option("--nx-ladder", nx_ladder, "Doubling space-interval counts")->delimiter(',');
    conv_cmd->add_option("--nx", nx_fixed, "Fixed space intervals (with --nt-ladder)");
    conv_cmd->add_option("--nt", nt_fixed, "Fixed time steps (with --nx-ladder)");
    conv_cmd->add_option("--out", out_path, "Output CSV path (default: stdout)");

    auto* price_cmd = app.add_subcommand("price", "Price an option, write V(xi, tau) curves");
    std::string kind = "put";
    double sigma = 0.55, rate = 0.05, dividend = 0.0, strike = 50.0, expiry = 1.0;
    double xi_min = 0.1, xi_max = 200.0;
    price_cmd->add_option("--kind", kind, "call | put | double_barrier_call")
        ->check(CLI::IsMember({"call", "put", "double_barrier_call"}));
    price_cmd->add_option("--mu", mu_list, "Fractional order, or comma list for several curves");
    price_cmd->add_option("--rho", rho, "Spline tension")->check(CLI::PositiveNumber);
    price_cmd->add_option("--nx", nx, "Space intervals")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 24));
    price_cmd->add_option("--nt", nt, "Time steps")->check(CLI::PositiveNumber);
    price_cmd->add_option("--sigma", sigma, "Volatility")->check(CLI::PositiveNumber);
    price_cmd->add_option("--rate", rate, "Risk-free rate (must be positive)");
    price_cmd->add_option("--dividend", dividend, "Dividend yield");
    price_cmd->add_option("--strike", strike, "Strike")->check(CLI::PositiveNumber);
    price_cmd->add_option("--expiry", expiry, "Expiry time")->check(CLI::PositiveNumber);
    price_cmd->add_option("--xi-min", xi_min, "Left price bound (barrier for knock-out)");
    price_cmd->add_option("--xi-max", xi_max, "Right price bound (barrier for knock-out)");
    price_cmd->add_option("--out", out_path, "Output CSV path (default: stdout)");

    auto* stab_cmd = app.add_subcommand("stability", "Amplification margin and decay check");
    std::size_t samples = 1000;
    stab_cmd->add_option("--example", example, "Built-in problem id")->check(CLI::Range(1, 3));
    stab_cmd->add_option("--mu", mu, "Fractional order in (0,1]");
    stab_cmd->add_option("--rho", rho, "Spline tension")->check(CLI::PositiveNumber);
    stab_cmd->add_option("--nx", nx, "Space intervals")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 24));
    stab_cmd->add_option("--nt", nt, "Time steps")->check(CLI::PositiveNumber);
    stab_cmd->add_option("--samples", samples, "Wave numbers to scan")->check(CLI::PositiveNumber);
    stab_cmd->add_option("--out", out_path, "Output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        apply_jobs(jobs);
        if (solve_cmd->parsed()) {
            return run_solve(example, mu, rho, nx, nt, out_path);
        }
        if (conv_cmd->parsed()) {
            return run_converge(example, parse_mu_list(mu_list), rho, nx_ladder, nt_ladder,
                                nx_fixed, nt_fixed, jobs, out_path);
        }
        if (price_cmd->parsed()) {
            return run_price(kind, parse_mu_list(mu_list), rho, nx, nt, sigma, rate, dividend,
                             strike, expiry, xi_min, xi_max, jobs, out_path);
        }
        return run_stability(example, mu, rho, nx, nt, samples, out_path);
    } catch (const tfbs::SolverFailure& e) {
        std::cerr << "solver failure (step or row " << e.index() << "): " << e.what() << "\n";
        return 3;
    } catch (const IoFailure& e) {
        std::cerr << "i/o failure: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 2;
    }
}
