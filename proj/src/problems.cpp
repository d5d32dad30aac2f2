#include "tfbs/problems.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace tfbs {

namespace {

void require_order(double order) {
    if (!(order > 0.0) || !(order <= 1.0)) {
        throw std::domain_error("fractional order must lie in (0, 1], got " +
                                std::to_string(order));
    }
}

ManufacturedProblem example1(double mu) {
    const double alpha = 0.25 * 0.25 / 2.0;   // sigma = 0.25
    const double beta = 0.05 - alpha;         // r_f = 0.05, no dividend yield
    const double gamma = 0.05;
    const double g3 = std::tgamma(3.0 - mu);
    const double g2 = std::tgamma(2.0 - mu);

    ManufacturedProblem p;
    p.exact = [](double x, double t) { return (t + 1.0) * (t + 1.0) * x * x * (1.0 - x); };
    p.spec.diffusion = alpha;
    p.spec.drift = beta;
    p.spec.reaction = gamma;
    p.spec.source = [=](double x, double t) {
        const double phi = x * x * (1.0 - x);
        const double frac = (2.0 / g3) * std::pow(t, 2.0 - mu) * phi +
                            (2.0 / g2) * std::pow(t, 1.0 - mu) * phi;
        const double space = alpha * (2.0 - 6.0 * x) + beta * x * (2.0 - 3.0 * x) - gamma * phi;
        return frac - (t + 1.0) * (t + 1.0) * space;
    };
    p.spec.initial = [](double x) { return x * x * (1.0 - x); };
    p.spec.initial_deriv = std::pair{0.0, -1.0};
    p.spec.left_boundary = [](double) { return 0.0; };
    p.spec.right_boundary = [](double) { return 0.0; };
    p.spec.domain_left = 0.0;
    p.spec.domain_right = 1.0;
    p.spec.horizon = 1.0;
    p.order = mu;
    return p;
}

ManufacturedProblem example2(double mu) {
    const double alpha = 1.0;
    const double beta = -0.5;
    const double gamma = 0.5;  // r_f = 0.5
    const double g3 = std::tgamma(3.0 - mu);
    const double g2 = std::tgamma(2.0 - mu);

    ManufacturedProblem p;
    p.exact = [](double x, double t) {
        return (t + 1.0) * (t + 1.0) * (1.0 + x * x + x * x * x);
    };
    p.spec.diffusion = alpha;
    p.spec.drift = beta;
    p.spec.reaction = gamma;
    p.spec.source = [=](double x, double t) {
        const double phi = 1.0 + x * x + x * x * x;
        const double frac = (2.0 / g3) * std::pow(t, 2.0 - mu) + (2.0 / g2) * std::pow(t, 1.0 - mu);
        const double space = alpha * (6.0 * x + 2.0) + beta * x * (2.0 + 3.0 * x) - gamma * phi;
        return frac * phi - (t + 1.0) * (t + 1.0) * space;
    };
    p.spec.initial = [](double x) { return 1.0 + x * x + x * x * x; };
    p.spec.initial_deriv = std::pair{0.0, 5.0};
    p.spec.left_boundary = [](double t) { return (1.0 + t) * (1.0 + t); };
    p.spec.right_boundary = [](double t) { return 3.0 * (1.0 + t) * (1.0 + t); };
    p.spec.domain_left = 0.0;
    p.spec.domain_right = 1.0;
    p.spec.horizon = 1.0;
    p.order = mu;
    return p;
}

ManufacturedProblem example3(double mu) {
    const double alpha = 0.8 * 0.8 / 2.0;  // sigma = 0.8
    const double beta = 0.02 - alpha;      // r_f = 0.02
    const double gamma = 0.02;
    const double g4 = std::tgamma(4.0 - mu);

    ManufacturedProblem p;
    p.exact = [](double x, double t) {
        return (t * t * t + 1.0) * x * x * x * x * (x - 1.0);
    };
    p.spec.diffusion = alpha;
    p.spec.drift = beta;
    p.spec.reaction = gamma;
    p.spec.source = [=](double x, double t) {
        const double x2 = x * x, x3 = x2 * x, x4 = x3 * x;
        const double frac = (6.0 / g4) * std::pow(t, 3.0 - mu) * (x4 * x - x4);
        const double space = 4.0 * alpha * x2 * (5.0 * x - 3.0) + beta * x3 * (5.0 * x - 4.0) -
                             gamma * x4 * (x - 1.0);
        return frac - (t * t * t + 1.0) * space;
    };
    p.spec.initial = [](double x) { return x * x * x * x * (x - 1.0); };
    p.spec.initial_deriv = std::pair{0.0, 1.0};
    p.spec.left_boundary = [](double) { return 0.0; };
    p.spec.right_boundary = [](double) { return 0.0; };
    p.spec.domain_left = 0.0;
    p.spec.domain_right = 1.0;
    p.spec.horizon = 1.0;
    p.order = mu;
    return p;
}

// Recursive adaptive Simpson on [a, b] with a plain error estimate. The
// integrands below are bounded with at most a mild derivative blow-up at one
// end, which subdivision absorbs.
template <typename F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate(const F& f, double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

ManufacturedProblem example_problem(int id, double order) {
    require_order(order);
    switch (id) {
        case 1:
            return example1(order);
        case 2:
            return example2(order);
        case 3:
            return example3(order);
        default:
            throw std::domain_error("unknown example id " + std::to_string(id) +
                                    ", expected 1, 2 or 3");
    }
}

double residual_check(const ManufacturedProblem& problem, std::size_t samples,
                      std::uint64_t seed) {
    const ProblemSpec& spec = problem.spec;
    const auto& u = problem.exact;
    const double width = spec.domain_right - spec.domain_left;
    const double mu = problem.order;
    require_order(mu);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(spec.domain_left + 0.1 * width,
                                              spec.domain_right - 0.1 * width);
    std::uniform_real_distribution<double> ut(0.1 * spec.horizon, spec.horizon);

    const double dx = 1e-3 * width;
    const double dt = 1e-4 * spec.horizon;

    const auto du_dt = [&](double x, double s) {
        if (s >= 2.0 * dt) {
            return (-u(x, s + 2.0 * dt) + 8.0 * u(x, s + dt) - 8.0 * u(x, s - dt) +
                    u(x, s - 2.0 * dt)) /
                   (12.0 * dt);
        }
        return (-25.0 * u(x, s) + 48.0 * u(x, s + dt) - 36.0 * u(x, s + 2.0 * dt) +
                16.0 * u(x, s + 3.0 * dt) - 3.0 * u(x, s + 4.0 * dt)) /
               (12.0 * dt);
    };

    // Caputo derivative of order mu via the substitution y = (t-s)^{1-mu}:
    //   D_t^mu u = 1/Gamma(2-mu) * Int_0^{t^{1-mu}} u_t(x, t - y^{1/(1-mu)}) dy,
    // which removes the kernel singularity so plain quadrature applies.
    const auto caputo = [&](double x, double t) {
        if (mu == 1.0) {
            return du_dt(x, t);
        }
        const double p = 1.0 / (1.0 - mu);
        const double upper = std::pow(t, 1.0 - mu);
        const auto integrand = [&](double y) { return du_dt(x, t - std::pow(y, p)); };
        return integrate(integrand, 0.0, upper, 1e-9) / std::tgamma(2.0 - mu);
    };

    double worst = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double x = ux(rng);
        const double t = ut(rng);
        const double uxx = (-u(x + 2.0 * dx, t) + 16.0 * u(x + dx, t) - 30.0 * u(x, t) +
                            16.0 * u(x - dx, t) - u(x - 2.0 * dx, t)) /
                           (12.0 * dx * dx);
        const double ux1 = (-u(x + 2.0 * dx, t) + 8.0 * u(x + dx, t) - 8.0 * u(x - dx, t) +
                            u(x - 2.0 * dx, t)) /
                           (12.0 * dx);
        const double residual = caputo(x, t) - spec.diffusion * uxx - spec.drift * ux1 +
                                spec.reaction * u(x, t) - spec.source(x, t);
        worst = std::max(worst, std::abs(residual));
    }
    return worst;
}

}  // namespace tfbs
