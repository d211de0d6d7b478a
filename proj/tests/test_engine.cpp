#include <doctest.h>

#include "adbsde/engine.hpp"

#include <cmath>
#include <cstring>

using namespace adbsde;

namespace {

Column column_of(const Engine& e, int k, double (*f)(double)) {
    Column b = e.brownian(k);
    for (double& v : b) v = f(v);
    return b;
}

double sq(double b) { return b * b; }

}  // namespace

TEST_CASE("tree widths, weights and Brownian values") {
    const TimeGrid g = make_grid(0.0, 1.0, 0.25, 0.25, 0.25);
    const auto tree = build_tree(g);
    CHECK(tree->width(0) == 1);
    CHECK(tree->width(g.t0_index()) == 1);
    CHECK(tree->width(g.T_index()) == 5);
    CHECK(tree->width(g.last_index()) == 5);
    const auto w = tree->weights(g.T_index());
    double s = 0.0;
    for (double x : w) s += x;
    CHECK(s == doctest::Approx(1.0));
    CHECK(w[0] == doctest::Approx(1.0 / 16));
    const Column b = tree->brownian(g.T_index());
    CHECK(b.front() == doctest::Approx(-2.0));
    CHECK(b.back() == doctest::Approx(2.0));
}

TEST_CASE("tree conditional expectation matches moments") {
    const TimeGrid g = make_grid(0.0, 1.0, 0.0, 0.0, 0.125);
    const auto tree = build_tree(g);
    const Column bt2 = column_of(*tree, g.T_index(), sq);
    for (int k = 0; k < g.T_index(); ++k) {
        const Column c = tree->cond_exp(bt2, g.T_index(), k);
        const Column b = tree->brownian(k);
        for (std::size_t j = 0; j < c.size(); ++j) {
            CHECK(c[j] == doctest::Approx(b[j] * b[j] + (1.0 - g.time_of(k))).epsilon(1e-12));
        }
    }
    CHECK(tree->expectation(bt2, g.T_index()) == doctest::Approx(1.0));
}

TEST_CASE("martingale coefficient reconstructs the next level") {
    const TimeGrid g = make_grid(0.0, 1.0, 0.0, 0.0, 0.25);
    const auto tree = build_tree(g);
    const int k = 2;
    const Column next = column_of(*tree, k + 1, [](double b) { return std::sin(b) + b * b * b; });
    const Column z = tree->martingale_coefficient(next, k);
    const Column mean = tree->cond_exp(next, k + 1, k);
    const double h = std::sqrt(g.dt());
    for (std::size_t j = 0; j < z.size(); ++j) {
        CHECK(mean[j] + z[j] * h == doctest::Approx(next[j + 1]));
        CHECK(mean[j] - z[j] * h == doctest::Approx(next[j]));
    }
    CHECK_THROWS((void)tree->martingale_coefficient(next, g.T_index()));
}

TEST_CASE("tree delayed read is the Brownian-bridge projection") {
    const TimeGrid g = make_grid(0.0, 1.0, 0.0, 0.0, 0.25);
    const auto tree = build_tree(g);
    // E[B_s | B_t] = (s / t) B_t
    const Column b1 = tree->brownian(1);
    const Column r = tree->delayed_read(b1, 1, 4);
    const Column b4 = tree->brownian(4);
    for (std::size_t j = 0; j < r.size(); ++j) CHECK(r[j] == doctest::Approx(0.25 * b4[j]));
}

TEST_CASE("tree forward step projects the Euler step") {
    const TimeGrid g = make_grid(0.0, 1.0, 0.0, 0.0, 0.25);
    const auto tree = build_tree(g);
    Column x{0.0};
    for (int k = 0; k < g.T_index(); ++k) {
        x = tree->forward_step(x, Column(x.size(), 0.0), Column(x.size(), 1.0), k);
        const Column bk = tree->brownian(k + 1);
        for (std::size_t j = 0; j < x.size(); ++j) CHECK(x[j] == doctest::Approx(bk[j]));
    }
}

TEST_CASE("bundle engine is reproducible and worker independent") {
    const TimeGrid g = make_grid(0.0, 1.0, 0.0, 0.0, 0.25);
    const auto a = sample_paths(g, 10000, 7, 3, 1);
    const auto b = sample_paths(g, 10000, 7, 3, 4);
    const Column ba = a->brownian(g.T_index());
    const Column bb = b->brownian(g.T_index());
    CHECK(std::memcmp(ba.data(), bb.data(), ba.size() * sizeof(double)) == 0);
    Column sqr(ba.size());
    for (std::size_t i = 0; i < ba.size(); ++i) sqr[i] = ba[i] * ba[i];
    const Column ca = a->cond_exp(sqr, g.T_index(), 2);
    const Column cb = b->cond_exp(sqr, g.T_index(), 2);
    CHECK(std::memcmp(ca.data(), cb.data(), ca.size() * sizeof(double)) == 0);
    CHECK(a->expectation(sqr, g.T_index()) == doctest::Approx(1.0).epsilon(0.05));
    CHECK(a->standard_error(sqr, g.T_index()) > 0.0);
    CHECK_THROWS(sample_paths(g, 1, 7));
}

TEST_CASE("bundle regression recovers polynomial conditional expectations") {
    const TimeGrid g = make_grid(0.0, 1.0, 0.0, 0.0, 0.25);
    const auto mc = sample_paths(g, 50000, 3);
    const Column bT = mc->brownian(g.T_index());
    Column sqr(bT.size());
    for (std::size_t i = 0; i < bT.size(); ++i) sqr[i] = bT[i] * bT[i];
    const Column c = mc->cond_exp(sqr, g.T_index(), 2);
    const Column b2 = mc->brownian(2);
    double mse = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) mse += std::pow(c[i] - (b2[i] * b2[i] + 0.5), 2);
    CHECK(std::sqrt(mse / static_cast<double>(c.size())) < 0.02);
}

TEST_CASE("beta norm weights") {
    const TimeGrid g = make_grid(0.0, 1.0, 0.0, 0.0, 0.5);
    const auto tree = build_tree(g);
    const NodeProcess one = tree->constant(1.0);
    const double n = beta_norm(*tree, one, NodeProcess{}, 1.0, NormSign::plus);
    CHECK(n * n == doctest::Approx(0.5 * (1.0 + std::exp(0.5))));
    const double m = beta_norm(*tree, one, one, 1.0, NormSign::minus);
    CHECK(m * m == doctest::Approx(2 * 0.5 * (1.0 + std::exp(-0.5))));
}
