#include <doctest.h>

#include "adbsde/timegrid.hpp"

#include <stdexcept>

using namespace adbsde;

TEST_CASE("grid indices cover the extended horizon") {
    const TimeGrid g = make_grid(0.0, 1.0, 0.25, 0.5, 0.125);
    CHECK(g.delay_steps() == 2);
    CHECK(g.advance_steps() == 4);
    CHECK(g.window_steps() == 8);
    CHECK(g.t0_index() == 2);
    CHECK(g.T_index() == 10);
    CHECK(g.last_index() == 14);
    CHECK(g.size() == 15);
    CHECK(g.time_of(0) == doctest::Approx(-0.25));
    CHECK(g.time_of(14) == doctest::Approx(1.5));
    CHECK(g.index_of(0.5) == 6);
    CHECK(g.steps_of(-0.25) == -2);
}

TEST_CASE("misaligned spans are rejected") {
    CHECK_THROWS_AS(make_grid(0.0, 1.0, 0.3, 0.0, 0.125), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(0.0, 1.0, 0.0, 0.1, 0.25), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(0.0, 1.0, 0.0, 0.0, 0.3), std::invalid_argument);
    const TimeGrid g = make_grid(0.0, 1.0, 0.0, 0.0, 0.25);
    CHECK_THROWS((void)g.index_of(0.3));
    CHECK_THROWS((void)g.index_of(2.0));
}

TEST_CASE("lag measures") {
    const TimeGrid g = make_grid(0.0, 1.0, 0.5, 0.5, 0.125);
    const LagMeasure p = point_mass(-0.25, g);
    CHECK(p.offsets == std::vector<int>{-2});
    CHECK(p.is_probability());

    const ScaledLag u = uniform_lag(-0.5, 0.5, g);
    CHECK(u.measure.is_probability());
    CHECK(u.scale == doctest::Approx(1.0));
    CHECK(u.measure.min_offset() == -4);
    CHECK(u.measure.max_offset() == 4);
    CHECK(u.measure.weights.front() == doctest::Approx(u.measure.weights[1] / 2));

    const LagMeasure m = mix({p, point_mass(-0.25, g), point_mass(0.0, g)}, {0.25, 0.25, 0.5});
    CHECK(m.size() == 2);
    CHECK(m.is_probability());

    CHECK_THROWS(point_mass(0.75, g));
    LagMeasure bad{{6}, {1.0}};
    CHECK_THROWS(validate_lag(bad, g));
}
