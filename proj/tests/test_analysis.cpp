#include <doctest.h>

#include "adbsde/analysis.hpp"

#include <cmath>

using namespace adbsde;

TEST_CASE("contraction checker examples") {
    const FeasibilityReport a = check_contraction(Condition::thm_2_2_i, {{"K", 0.25}, {"l", 1.0}});
    CHECK(a.feasible);
    CHECK(a.beta_star == doctest::Approx(2.0));
    CHECK(a.gamma == doctest::Approx(0.125 * std::exp(2.0)).epsilon(1e-9));

    const FeasibilityReport z = check_contraction(Condition::thm_2_2_i, {{"K", 0.0}, {"l", 3.0}});
    CHECK(z.feasible);
    CHECK(z.gamma == 0.0);

    const FeasibilityReport b = check_contraction(Condition::thm_2_2_i, {{"K", 1.0}, {"l", 1.0}});
    CHECK_FALSE(b.feasible);
    CHECK(b.value == doctest::Approx(2.0 * std::exp(2.0)).epsilon(1e-9));
}

TEST_CASE("interior minimizer is refined") {
    // 4 K2^2 e^{beta u} / beta (1 + 2 / beta) has an interior minimum for u > 0.
    const ConstantMap m{{"K2", 0.1}, {"u", 0.5}};
    const FeasibilityReport r = check_contraction(Condition::thm_3_2_i, m);
    CHECK(r.feasible);
    const double h = 1e-4;
    CHECK(contraction_value(Condition::thm_3_2_i, m, r.beta_star + h) >= r.value);
    CHECK(contraction_value(Condition::thm_3_2_i, m, r.beta_star - h) >= r.value);
    CHECK(contraction_value(Condition::thm_3_2_i, m, 2.0) == doctest::Approx(0.04 * std::exp(1.0)));
}

TEST_CASE("threshold conventions") {
    // prop_2_5 is non-strict: exactly 1 at beta = 2 is accepted.
    const double K = std::sqrt(2.0 / (8.0 * std::exp(2.0)));
    const FeasibilityReport r = check_contraction(Condition::prop_2_5, {{"K", K}, {"l", 1.0}});
    CHECK(r.value == doctest::Approx(1.0));
    CHECK(r.feasible);
    const FeasibilityReport s = check_contraction(Condition::prop_2_6, {{"Kp", 0.1}, {"l", 0.5}});
    CHECK(s.gamma == doctest::Approx(3.0 * s.value));
    CHECK(contraction_value(Condition::prop_2_6, {{"K'", 0.1}, {"l", 0.5}}, 2.0) > 0.0);
}

TEST_CASE("missing or negative constants are rejected") {
    CHECK_THROWS_AS(check_contraction(Condition::thm_2_2_i, {{"K", 0.1}}), std::invalid_argument);
    CHECK_THROWS_AS(check_contraction(Condition::thm_2_2_ii, {{"K1", -1.0}, {"T", 1.0}, {"l", 1.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_condition("thm_9"), std::invalid_argument);
}

TEST_CASE("feasibility is monotone in the delay span") {
    bool was_feasible = true;
    for (int i = 1; i <= 20; ++i) {
        const bool f = check_contraction(Condition::thm_2_2_i, {{"K", 0.2}, {"l", 0.1 * i}}).feasible;
        CHECK_FALSE((f && !was_feasible));
        was_feasible = f;
    }
}

TEST_CASE("comparison harness orders the built-in pairs") {
    for (double kind : {0.0, 1.0}) {
        const ProblemSpec p = builtin_problem("comparison_pair", {{"kind", kind}});
        const auto tree = build_tree(p.grid);
        const ComparisonReport r = run_comparison(p, *p.partner, *tree);
        CHECK(r.hypotheses_passed);
        CHECK(r.min_difference >= 0.0);
        CHECK(r.chain_monotone);
        const ComparisonReport same = run_comparison(p, p, *tree);
        CHECK(same.min_difference == 0.0);
    }
}

TEST_CASE("comparison harness reports a failed hypothesis") {
    const ProblemSpec p = builtin_problem("comparison_pair", {{"kind", 0.0}});
    const auto tree = build_tree(p.grid);
    const ComparisonReport r = run_comparison(*p.partner, p, *tree);
    CHECK_FALSE(r.hypotheses_passed);
    CHECK_FALSE(r.failed_hypothesis.empty());
}

TEST_CASE("continuous dependence on bsde_8") {
    const ProblemSpec p = builtin_problem("bsde_8", {});
    const auto tree = build_tree(p.grid);
    SolverConfig cfg;
    cfg.tol = 1e-13;
    const DependenceReport r = continuous_dependence_probe(p, {0.0, 0.2, 0.1, 0.05}, *tree, cfg);
    CHECK(r.rows[0].distance == 0.0);
    CHECK(r.bounded);
    CHECK(r.linear_scaling);
    // dY = eps (T - t) / (1 - TK) at t = 0
    CHECK(r.rows[1].sup_diff == doctest::Approx(0.2 / 0.75).epsilon(1e-8));
}

TEST_CASE("continuous dependence on the delayed SDE") {
    const ProblemSpec p = builtin_problem("delayed_sde", {});
    const auto tree = build_tree(p.grid);
    const DependenceReport r = continuous_dependence_probe(p, {0.1, 0.05}, *tree);
    CHECK(r.bounded);
    CHECK(r.linear_scaling);
}

TEST_CASE("duality trivial and reduced cases") {
    const auto tree = build_tree(duality_grid(1.0, 0.0, 0.0, 8));
    LinearCoefficients k;
    k.c = 1.0;
    const DualityReport r = verify_duality(k, 0.0, 0.0, [](double t, double b) { return b * b - t; },
                                           [](double, double b) { return 2 * b; }, {0.0, 0.5}, *tree);
    CHECK(r.lhs == doctest::Approx(1.0));
    CHECK(r.gaps[0] <= 1e-9);
    CHECK(r.gaps[1] <= 1e-9);
    REQUIRE(r.closed_y0);
    CHECK(*r.closed_y0 == doctest::Approx(1.0));
}

TEST_CASE("duality with delayed and advanced terms") {
    LinearCoefficients k;
    k.b = 0.1;
    k.b_bar = 0.2;
    k.b_under = 0.1;
    k.sigma = 0.1;
    const auto tree = build_tree(duality_grid(1.0, 0.25, 0.25, 16));
    const DualityReport r = verify_duality(k, 0.25, 0.25, [](double, double b) { return 1.0 + b; },
                                           [](double, double) { return 1.0; }, {0.0}, *tree);
    REQUIRE(r.closed_y0);
    CHECK(r.denominator < 1.0);
    CHECK(std::abs(*r.closed_y0 - r.lhs) < 0.05);
    CHECK(r.gaps[0] < 0.05);
}
