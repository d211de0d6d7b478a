#include <doctest.h>

#include "adbsde/analysis.hpp"
#include "adbsde/bsde_solver.hpp"

#include <cmath>

using namespace adbsde;

TEST_CASE("backward sweep: quadratic terminal value is node exact") {
    for (int N = 1; N <= 6; ++N) {
        const TimeGrid g = make_grid(0.0, 1.0, 0.0, 0.0, 1.0 / N);
        const auto tree = build_tree(g);
        const BsdeSolution s = backward_sweep(*tree, tree->zeros(), [](double t, double b) { return b * b - t; },
                                              [](double, double b) { return 2 * b; });
        for (int k = 0; k < g.T_index(); ++k) {
            const Column b = tree->brownian(k);
            for (std::size_t j = 0; j < b.size(); ++j) {
                CHECK(s.Y[k][j] == doctest::Approx(b[j] * b[j] - g.time_of(k)).epsilon(1e-12));
                CHECK(s.Z[k][j] == doctest::Approx(2 * b[j]).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("backward sweep: constant generator and identity cases") {
    const TimeGrid g = make_grid(0.0, 1.0, 0.25, 0.25, 0.125);
    const auto tree = build_tree(g);
    const BsdeSolution a = backward_sweep(*tree, tree->constant(0.3), [](double, double) { return 0.0; }, {});
    CHECK(a.Y0 == doctest::Approx(0.3));
    const BsdeSolution b = backward_sweep(*tree, tree->zeros(), [](double, double) { return 1.0; }, {});
    for (int k = 0; k <= g.last_index(); ++k) {
        for (double v : b.Y[k]) CHECK(v == doctest::Approx(1.0));
        for (double v : b.Z[k]) CHECK(v == doctest::Approx(0.0));
    }
    // pre-horizon convention
    for (int k = 0; k < g.t0_index(); ++k) {
        for (double v : a.Y[k]) CHECK(v == a.Y0);
    }
}

TEST_CASE("solve_bsde: delayed closed form") {
    const ProblemSpec p = builtin_problem("bsde_8", {{"T", 1.0}, {"K", 0.25}});
    const auto tree = build_tree(p.grid);
    SolverConfig cfg;
    cfg.tol = 1e-12;
    const auto [s, r] = solve_bsde(p, *tree, cfg);
    CHECK(r.converged);
    CHECK(r.verdict_detail == "converged");
    CHECK(s.Y0 == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(r.residuals.back() <= cfg.tol);
}

TEST_CASE("solve_bsde: initial guesses agree") {
    const ProblemSpec p = builtin_problem("g1_demo", {});
    const auto tree = build_tree(p.grid);
    SolverConfig a;
    a.tol = 1e-11;
    SolverConfig b = a;
    b.initial_guess = InitialGuess::zero;
    const auto [sa, ra] = solve_bsde(p, *tree, a);
    const auto [sb, rb] = solve_bsde(p, *tree, b);
    CHECK(ra.converged);
    CHECK(rb.converged);
    CHECK(beta_norm(*tree, difference(sa.Y, sb.Y), difference(sa.Z, sb.Z), ra.beta_used, NormSign::plus) <=
          10 * a.tol);
}

TEST_CASE("solve_bsde: divergence is detected") {
    const ProblemSpec p = builtin_problem("example_2_3", {{"xi_const", 1.0}});
    const auto tree = build_tree(p.grid);
    SolverConfig cfg;
    cfg.max_iter = 50;
    const auto [s, r] = solve_bsde(p, *tree, cfg);
    CHECK_FALSE(r.converged);
    CHECK(r.verdict_detail == "max_iter_nondecreasing");
    for (std::size_t i = 1; i < r.anchor_means.size(); ++i) {
        CHECK(r.anchor_means[i] - r.anchor_means[i - 1] == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("solve_bsde: slow convergence is reported as such") {
    const ProblemSpec p = builtin_problem("bsde_8", {});
    const auto tree = build_tree(p.grid);
    SolverConfig cfg;
    cfg.max_iter = 2;
    cfg.tol = 1e-15;
    const auto [s, r] = solve_bsde(p, *tree, cfg);
    CHECK_FALSE(r.converged);
    CHECK(r.verdict_detail == "max_iter_slow");
    CHECK_FALSE(r.gamma_empirical.has_value());
}

TEST_CASE("solve_bsde: gamma_empirical within the theoretical bound") {
    const ProblemSpec p = builtin_problem("g1_demo", {});
    const auto tree = build_tree(p.grid);
    const auto [s, r] = solve_bsde(p, *tree);
    const FeasibilityReport f =
        check_contraction(Condition::thm_2_2_i, {{"K", p.generator.lipschitz.constant}, {"l", p.grid.l()}});
    REQUIRE(f.feasible);
    REQUIRE(r.gamma_empirical);
    CHECK(*r.gamma_empirical <= std::sqrt(f.gamma) * 1.2);
}

TEST_CASE("apriori_check margins") {
    const TimeGrid g = make_grid(0.0, 1.0, 0.25, 0.0, 0.125);
    const auto tree = build_tree(g);
    const BsdeSolution zero = backward_sweep(*tree, tree->zeros(), [](double, double) { return 0.0; }, {});
    const AprioriReport r0 = apriori_check(*tree, zero, tree->zeros(), 2.0);
    CHECK(r0.lhs == 0.0);
    CHECK(r0.margin == 0.0);

    const BsdeSolution sq = backward_sweep(*tree, tree->zeros(), [](double, double b) { return b * b; }, {});
    CHECK(apriori_check(*tree, sq, tree->zeros(), 2.0).margin >= 0.0);

    NodeProcess gb = tree->zeros();
    for (int k = 0; k <= g.last_index(); ++k) gb[k] = tree->brownian(k);
    const BsdeSolution s = backward_sweep(*tree, gb, [](double, double) { return 1.0; }, {});
    const AprioriReport r = apriori_check(*tree, s, gb, 4.0);
    CHECK(r.margin >= 0.0);
    CHECK(r.sup_ratio > 0.0);
}
