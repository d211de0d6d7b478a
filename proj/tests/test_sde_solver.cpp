#include <doctest.h>

#include "adbsde/sde_solver.hpp"

#include <cmath>

using namespace adbsde;

namespace {

ProblemSpec frozen_problem(const TimeGrid& g, double theta) {
    ProblemSpec p;
    p.kind = ProblemKind::sde;
    p.grid = g;
    p.theta = [theta](double, double) { return theta; };
    return p;
}

}  // namespace

TEST_CASE("forward sweep elementary cases") {
    const TimeGrid g = make_grid(0.0, 1.0, 0.25, 0.25, 0.125);
    const auto tree = build_tree(g);
    const SdeSolution a = forward_sweep(*tree, tree->zeros(), tree->zeros(), frozen_problem(g, 2.5));
    for (const auto& col : a.X.columns()) {
        for (double v : col) CHECK(v == doctest::Approx(2.5));
    }
    const SdeSolution b = forward_sweep(*tree, tree->constant(1.0), tree->zeros(), frozen_problem(g, 0.0));
    for (double v : b.X[g.T_index()]) CHECK(v == doctest::Approx(1.0));
    const SdeSolution c = forward_sweep(*tree, tree->zeros(), tree->constant(1.0), frozen_problem(g, 0.0));
    for (int k = g.t0_index(); k <= g.T_index(); ++k) {
        const Column bk = tree->brownian(k);
        for (std::size_t j = 0; j < bk.size(); ++j) CHECK(c.X[k][j] == doctest::Approx(bk[j]));
    }
    // terminal extension holds X_T
    for (int k = g.T_index() + 1; k <= g.last_index(); ++k) CHECK(c.X[k] == c.X[g.T_index()]);
}

TEST_CASE("solve_sde: delayed drift converges and satisfies the Euler identity") {
    const ProblemSpec p = builtin_problem("delayed_sde", {});
    const auto tree = build_tree(p.grid);
    SolverConfig cfg;
    cfg.tol = 1e-12;
    const auto [s, r] = solve_sde(p, *tree, cfg);
    CHECK(r.converged);
    const PathView v(*tree, nullptr, nullptr, &s.X);
    for (int k = p.grid.t0_index(); k < p.grid.T_index(); ++k) {
        const Column next = tree->forward_step(s.X[k], eval_coefficient(p.drift, k, v),
                                               eval_coefficient(p.diffusion, k, v), k);
        for (std::size_t j = 0; j < next.size(); ++j) CHECK(next[j] == doctest::Approx(s.X[k + 1][j]).epsilon(1e-10));
    }
    for (int k = 0; k <= p.grid.t0_index(); ++k) {
        for (double x : s.X[k]) CHECK(x == 1.0);
    }
}

TEST_CASE("solve_sde: counterexamples diverge") {
    SolverConfig cfg;
    cfg.max_iter = 50;
    for (const char* name : {"sde_remark4", "example_3_3"}) {
        CAPTURE(name);
        const ProblemSpec p = builtin_problem(name, {{"a", 1.0}});
        const auto tree = build_tree(p.grid);
        const auto [s, r] = solve_sde(p, *tree, cfg);
        CHECK_FALSE(r.converged);
        CHECK(r.verdict_detail == "max_iter_nondecreasing");
        for (std::size_t i = 1; i < r.anchor_means.size(); ++i) {
            CHECK(r.anchor_means[i] - r.anchor_means[i - 1] == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("apriori_check_sde margins") {
    const TimeGrid g = make_grid(0.0, 1.0, 0.0, 0.25, 0.125);
    const auto tree = build_tree(g);
    const SdeSolution z = forward_sweep(*tree, tree->zeros(), tree->zeros(), frozen_problem(g, 0.0));
    CHECK(apriori_check_sde(*tree, z, tree->zeros(), tree->zeros(), 0, 2.0).margin == 0.0);

    const SdeSolution a = forward_sweep(*tree, tree->constant(1.0), tree->constant(1.0), frozen_problem(g, 1.0));
    CHECK(apriori_check_sde(*tree, a, tree->constant(1.0), tree->constant(1.0), 0, 2.0).margin >= 0.0);

    NodeProcess b = tree->zeros();
    for (int k = 0; k <= g.last_index(); ++k) b[k] = tree->brownian(k);
    const SdeSolution c = forward_sweep(*tree, b, tree->zeros(), frozen_problem(g, 0.0));
    CHECK(apriori_check_sde(*tree, c, b, tree->zeros(), 0, 4.0).margin >= 0.0);
}
