#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "tfbs/convergence.hpp"
#include "tfbs/grid.hpp"
#include "tfbs/options.hpp"

namespace {

tfbs::ProblemSpec quiet_spec() {
    tfbs::ProblemSpec spec;
    spec.diffusion = 0.5;
    spec.drift = 0.0;
    spec.reaction = 0.5;
    spec.source = [](double, double) { return 0.0; };
    spec.initial = [](double) { return 0.0; };
    spec.initial_deriv = {0.0, 0.0};
    spec.left_boundary = [](double) { return 0.0; };
    spec.right_boundary = [](double) { return 0.0; };
    spec.domain_left = 0.0;
    spec.domain_right = 1.0;
    spec.horizon = 1.0;
    return spec;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(current);
            current.clear();
        } else {
            current += ch;
        }
    }
    fields.push_back(current);
    return fields;
}

}  // namespace

TEST_CASE("error norms") {
    SUBCASE("an exact match reports zero") {
        const tfbs::SpatialGrid grid(0.0, 1.0, 6);
        const tfbs::SolveResult result = tfbs::solve(quiet_spec(), grid, 4, 0.5, 1.5);
        const tfbs::ErrorReport report =
            tfbs::error_norms(result, [](double, double) { return 0.0; });
        CHECK(report.l_inf == 0.0);
        CHECK(report.l_2 == 0.0);
        CHECK(report.space_intervals == 6);
        CHECK(report.time_steps == 4);
        CHECK(report.order == 0.5);
        CHECK(report.tension == 1.5);
        CHECK(report.runtime.count() >= 0.0);
    }

    SUBCASE("a single interior node isolates the norm weights") {
        const tfbs::SpatialGrid grid(0.0, 1.0, 2);
        const tfbs::SolveResult result = tfbs::solve(quiet_spec(), grid, 3, 0.5, 1.5);
        const double e = 0.3;
        const tfbs::ErrorReport report =
            tfbs::error_norms(result, [e](double, double) { return e; });
        CHECK(report.l_inf == doctest::Approx(e).epsilon(1e-15));
        CHECK(report.l_2 == doctest::Approx(std::sqrt(0.5 * e * e)).epsilon(1e-15));
    }

    SUBCASE("the weighted norm is bounded by the max norm") {
        const tfbs::ManufacturedProblem problem = tfbs::example_problem(1, 0.5);
        const tfbs::SpatialGrid grid(0.0, 1.0, 16);
        const tfbs::SolveResult result = tfbs::solve(problem.spec, grid, 20, 0.5, 1.5);
        const tfbs::ErrorReport report = tfbs::error_norms(result, problem.exact);
        CHECK(report.l_inf > 0.0);
        const double bound = report.l_inf *
                             std::sqrt(grid.spacing() * static_cast<double>(grid.intervals() - 1));
        CHECK(report.l_2 <= bound * (1.0 + 1e-14));
    }
}

TEST_CASE("EOC ladders") {
    const tfbs::ManufacturedProblem problem = tfbs::example_problem(1, 0.5);

    SUBCASE("reported orders match the reported errors") {
        tfbs::LadderConfig config;
        config.axis = tfbs::RefinementAxis::time;
        config.fixed = 4;
        config.tension = 1.5;
        config.label = 1;
        const std::vector<std::size_t> levels{4, 8, 16};
        const tfbs::EOCLadder ladder = tfbs::eoc_ladder(problem, config, levels);

        REQUIRE(ladder.rows.size() == 3);
        CHECK(ladder.order == 0.5);
        CHECK(ladder.tension == 1.5);
        CHECK(ladder.label == 1);
        CHECK(!ladder.rows[0].eoc_l2.has_value());
        CHECK(!ladder.rows[0].eoc_linf.has_value());
        for (std::size_t i = 1; i < 3; ++i) {
            REQUIRE(ladder.rows[i].eoc_l2.has_value());
            const double expected_l2 = std::log2(ladder.rows[i - 1].l_2 / ladder.rows[i].l_2);
            const double expected_linf =
                std::log2(ladder.rows[i - 1].l_inf / ladder.rows[i].l_inf);
            CHECK(*ladder.rows[i].eoc_l2 == doctest::Approx(expected_l2).epsilon(1e-12));
            CHECK(*ladder.rows[i].eoc_linf == doctest::Approx(expected_linf).epsilon(1e-12));
        }
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(ladder.rows[i].space_intervals == 4);
            CHECK(ladder.rows[i].time_steps == levels[i]);
        }
    }

    SUBCASE("space refinement varies the other dimension") {
        tfbs::LadderConfig config;
        config.axis = tfbs::RefinementAxis::space;
        config.fixed = 4;
        config.tension = 1.5;
        const std::vector<std::size_t> levels{4, 8};
        const tfbs::EOCLadder ladder = tfbs::eoc_ladder(problem, config, levels);
        CHECK(ladder.rows[0].space_intervals == 4);
        CHECK(ladder.rows[1].space_intervals == 8);
        CHECK(ladder.rows[0].time_steps == 4);
        CHECK(ladder.rows[1].time_steps == 4);
    }

    SUBCASE("results do not depend on the level fan-out") {
        tfbs::LadderConfig config;
        config.axis = tfbs::RefinementAxis::time;
        config.fixed = 4;
        config.tension = 1.5;
        const std::vector<std::size_t> levels{4, 8, 16};
        const tfbs::EOCLadder serial = tfbs::eoc_ladder(problem, config, levels, 1);
        const tfbs::EOCLadder fanned = tfbs::eoc_ladder(problem, config, levels, 3);
        for (std::size_t i = 0; i < levels.size(); ++i) {
            CHECK(serial.rows[i].l_2 == fanned.rows[i].l_2);
            CHECK(serial.rows[i].l_inf == fanned.rows[i].l_inf);
        }
    }

    SUBCASE("ladder validation") {
        tfbs::LadderConfig config;
        config.fixed = 4;
        const std::vector<std::size_t> one{4};
        const std::vector<std::size_t> skewed{4, 12};
        const std::vector<std::size_t> fine{4, 8};
        CHECK_THROWS_AS(tfbs::eoc_ladder(problem, config, one), std::domain_error);
        CHECK_THROWS_AS(tfbs::eoc_ladder(problem, config, skewed), std::domain_error);
        config.fixed = 0;
        CHECK_THROWS_AS(tfbs::eoc_ladder(problem, config, fine), std::domain_error);
    }
}

TEST_CASE("amplification margin") {
    SUBCASE("long-wave limit matches the closed form") {
        const tfbs::ManufacturedProblem problem = tfbs::example_problem(2, 0.5);
        const tfbs::BasisConstants basis = tfbs::basis_constants(0.5, 0.25);
        const tfbs::L1Weights weights = tfbs::l1_weights(0.5, 8, 0.01);
        const std::vector<double> tiny{1e-9};
        const double margin =
            tfbs::amplification_margin(problem.spec, basis, weights, tiny);
        const double y1 = 1.0 + 2.0 * basis.eta;
        const double sum = y1 * (1.0 + problem.spec.reaction * weights.gamma_factor);
        CHECK(margin == doctest::Approx(sum * sum - y1 * y1).epsilon(1e-10));
    }

    SUBCASE("every built-in problem damps all sampled modes") {
        struct Case {
            tfbs::ProblemSpec spec;
            double rho, hx, mu, ht;
        };
        std::vector<Case> cases;
        cases.push_back({tfbs::example_problem(1, 0.5).spec, 1.5, 0.002, 0.5, 0.1});
        cases.push_back({tfbs::example_problem(2, 0.2).spec, 0.5, 0.25, 0.2, 0.0004});
        cases.push_back({tfbs::example_problem(3, 0.9).spec, 8.6, 0.001, 0.9, 0.125});
        {
            tfbs::OptionModel model;
            model.volatility = 0.55;
            model.rate = 0.05;
            model.strike = 50.0;
            model.expiry = 1.0;
            model.price_bounds = {0.1, 200.0};
            model.kind = tfbs::OptionKind::put;
            cases.push_back({tfbs::to_log_space(model), 1.5, 0.019, 0.999, 0.0025});
        }
        for (const Case& c : cases) {
            CAPTURE(c.rho);
            const tfbs::BasisConstants basis = tfbs::basis_constants(c.rho, c.hx);
            const tfbs::L1Weights weights = tfbs::l1_weights(c.mu, 4, c.ht);
            std::vector<double> waves(1000);
            for (std::size_t i = 0; i < waves.size(); ++i) {
                waves[i] = static_cast<double>(i + 1) / static_cast<double>(waves.size()) *
                           3.14159265358979323846 / c.hx;
            }
            CHECK(tfbs::amplification_margin(c.spec, basis, weights, waves) > 0.0);
        }
    }

    SUBCASE("margin stays positive even with weak damping") {
        tfbs::ProblemSpec spec = quiet_spec();
        spec.reaction = 1e-8;
        const tfbs::BasisConstants basis = tfbs::basis_constants(1.5, 0.1);
        const tfbs::L1Weights weights = tfbs::l1_weights(0.5, 4, 0.1);
        std::vector<double> waves(100);
        for (std::size_t i = 0; i < waves.size(); ++i) {
            waves[i] = static_cast<double>(i + 1) * 0.31;
        }
        const double margin = tfbs::amplification_margin(spec, basis, weights, waves);
        CHECK(margin > 0.0);
    }
}

TEST_CASE("CSV table report") {
    SUBCASE("no ladders produce only the header") {
        CHECK(tfbs::table_report({}) ==
              "example,mu,rho,nx,nt,l2,eoc_l2,linf,eoc_linf,runtime_ms\n");
    }

    SUBCASE("rows carry the ladder data with empty leading EOC cells") {
        const tfbs::ManufacturedProblem problem = tfbs::example_problem(1, 0.5);
        tfbs::LadderConfig config;
        config.axis = tfbs::RefinementAxis::time;
        config.fixed = 4;
        config.tension = 1.5;
        config.label = 1;
        const std::vector<std::size_t> levels{4, 8, 16};
        const tfbs::EOCLadder ladder = tfbs::eoc_ladder(problem, config, levels);
        const std::string csv = tfbs::table_report({&ladder, 1});

        std::istringstream stream(csv);
        std::string line;
        std::vector<std::string> lines;
        while (std::getline(stream, line)) {
            lines.push_back(line);
        }
        REQUIRE(lines.size() == 4);
        CHECK(lines[0] == "example,mu,rho,nx,nt,l2,eoc_l2,linf,eoc_linf,runtime_ms");

        for (std::size_t i = 1; i < lines.size(); ++i) {
            const std::vector<std::string> fields = split_csv(lines[i]);
            REQUIRE(fields.size() == 10);
            CHECK(fields[0] == "1");
            CHECK(fields[3] == "4");
            CHECK(fields[4] == std::to_string(levels[i - 1]));
            if (i == 1) {
                CHECK(fields[6].empty());
                CHECK(fields[8].empty());
            } else {
                CHECK(!fields[6].empty());
                CHECK(!fields[8].empty());
            }
            double l2 = 0.0;
            REQUIRE(std::sscanf(fields[5].c_str(), "%le", &l2) == 1);
            CHECK(l2 == doctest::Approx(ladder.rows[i - 1].l_2).epsilon(1e-5));
            double mu = 0.0;
            REQUIRE(std::sscanf(fields[1].c_str(), "%le", &mu) == 1);
            CHECK(mu == doctest::Approx(0.5).epsilon(1e-9));
        }
    }
}
