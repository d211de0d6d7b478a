#include <doctest.h>

#include "adbsde/coefficients.hpp"

#include <cmath>

using namespace adbsde;

namespace {

Term make_term(double c, LagMeasure lag, Target t, Wrap w = Wrap::raw) {
    Term term;
    term.constant = c;
    term.lag = std::move(lag);
    term.target = t;
    term.wrap = w;
    return term;
}

}  // namespace

TEST_CASE("eval_coefficient reads delayed, present and advanced values") {
    const TimeGrid g = make_grid(0.0, 1.0, 0.25, 0.25, 0.125);
    const auto tree = build_tree(g);
    NodeProcess y = tree->zeros();
    for (int k = 0; k <= g.last_index(); ++k) y[k] = tree->constant_column(g.time_of(k), k);
    const NodeProcess z = tree->constant(2.0);
    CoefficientSpec s;
    s.terms = {make_term(1.0, point_mass(-0.25, g), Target::y), make_term(10.0, point_mass(0.25, g), Target::y, Wrap::cond_exp),
               make_term(100.0, point_mass(0.0, g), Target::z)};
    s.forcing = [](double, double) { return 1000.0; };
    const PathView v(*tree, &y, &z);
    const int k = g.index_of(0.5);
    const Column c = eval_coefficient(s, k, v);
    for (double x : c) CHECK(x == doctest::Approx(0.25 + 7.5 + 200.0 + 1000.0));
}

TEST_CASE("validation rejects ill-posed terms") {
    const TimeGrid g = make_grid(0.0, 1.0, 0.25, 0.25, 0.125);
    CoefficientSpec s;
    s.terms = {make_term(1.0, point_mass(0.25, g), Target::y, Wrap::raw)};
    CHECK_THROWS_AS(validate_coefficient(s, g), std::invalid_argument);

    s.terms = {make_term(1.0, LagMeasure{{5}, {1.0}}, Target::y, Wrap::cond_exp)};
    CHECK_THROWS_AS(validate_coefficient(s, g), std::invalid_argument);

    s.terms = {make_term(1.0, point_mass(-0.25, g), Target::y)};
    s.lipschitz = {Assumption::A1pp, 1.0, {}};
    CHECK_THROWS_AS(validate_coefficient(s, g), std::invalid_argument);

    s.terms = {make_term(1.0, point_mass(-0.25, g), Target::z)};
    s.lipschitz = {Assumption::A1p, 1.0, point_mass(-0.25, g)};
    CHECK_THROWS_AS(validate_coefficient(s, g), std::invalid_argument);

    s.terms = {make_term(1.0, point_mass(-0.25, g), Target::y)};
    CHECK_NOTHROW(validate_coefficient(s, g));
}

TEST_CASE("built-in problems construct and check their preconditions") {
    for (const auto& name : builtin_names()) {
        CAPTURE(name);
        CHECK_NOTHROW(builtin_problem(name, {}));
    }
    CHECK_NOTHROW(builtin_problem("bsde_7", {{"K", 0.25}, {"T", 1.0}}));
    CHECK_THROWS_AS(builtin_problem("bsde_7", {{"K", 0.27}, {"T", 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(builtin_problem("nope", {}), std::invalid_argument);
    CHECK(builtin_problem("example_2_3", {{"xi_const", 1.0}}).expected == ExpectedBehavior::diverges);
    CHECK(builtin_problem("example_2_3", {{"xi_const", 0.0}}).expected == ExpectedBehavior::converges);
}

TEST_CASE("declared constants survive the audit") {
    for (const char* name : {"bsde_8", "bsde_9", "bsde_7", "g1_demo", "g2_demo", "lipschitz_demo"}) {
        CAPTURE(name);
        const ProblemSpec p = builtin_problem(name, {});
        const auto tree = build_tree(p.grid);
        const AuditReport r = lipschitz_audit(p.generator, *tree, 30, 5);
        CHECK(r.passed);
        CHECK(r.max_ratio > 0.0);
    }
    const ProblemSpec sde = builtin_problem("delayed_sde", {});
    const auto tree = build_tree(sde.grid);
    CHECK(lipschitz_audit(sde.drift, *tree, 30, 5).passed);
}

TEST_CASE("an understated constant is caught") {
    ProblemSpec p = builtin_problem("lipschitz_demo", {{"K", 0.5}});
    p.generator.lipschitz.constant = 0.25;
    const auto tree = build_tree(p.grid);
    const AuditReport r = lipschitz_audit(p.generator, *tree, 30, 5);
    CHECK_FALSE(r.passed);
    CHECK_FALSE(r.worst_probe.empty());
}

TEST_CASE("implied declarations") {
    const TimeGrid g = make_grid(0.0, 1.0, 0.25, 0.0, 0.125);
    const LipschitzDecl a1pp{Assumption::A1pp, 0.5, {}};
    const LipschitzDecl a1p = implied_declaration(a1pp, Assumption::A1p, g);
    CHECK(a1p.constant == 0.5);
    const LipschitzDecl a1 = implied_declaration(a1pp, Assumption::A1, g);
    CHECK(a1.constant == 1.0);
    CHECK(a1.measure.is_probability());
    const LipschitzDecl a2 = implied_declaration(a1, Assumption::A2, g);
    CHECK(a2.constant == doctest::Approx(2.0));
    const LipschitzDecl b2 = implied_declaration({Assumption::B1, 0.3, point_mass(0.0, g)}, Assumption::B2, g);
    CHECK(b2.constant == doctest::Approx(0.09));
    CHECK_THROWS(implied_declaration(a2, Assumption::A1, g));
}
