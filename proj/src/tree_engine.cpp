#include "adbsde/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace adbsde {

TreeEngine::TreeEngine(TimeGrid grid) : Engine(std::move(grid)), sqrt_dt_(std::sqrt(grid_.dt())) {
    const int n = depth();
    log_binom_.resize(static_cast<std::size_t>(n + 1));
    for (int m = 0; m <= n; ++m) {
        auto& row = log_binom_[static_cast<std::size_t>(m)];
        row.resize(static_cast<std::size_t>(m + 1));
        for (int j = 0; j <= m; ++j) {
            row[static_cast<std::size_t>(j)] =
                std::lgamma(m + 1.0) - std::lgamma(j + 1.0) - std::lgamma(m - j + 1.0);
        }
    }
}

std::unique_ptr<TreeEngine> build_tree(const TimeGrid& grid) { return std::make_unique<TreeEngine>(grid); }

std::size_t TreeEngine::width(int index) const { return static_cast<std::size_t>(level(index) + 1); }

double TreeEngine::node_value(int lvl, int node) const { return (2.0 * node - lvl) * sqrt_dt_; }

double TreeEngine::binom_prob(int n, int k) const {
    return std::exp(log_binom_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)] - n * std::log(2.0));
}

Column TreeEngine::brownian(int index) const {
    const int m = level(index);
    Column c(static_cast<std::size_t>(m + 1));
    for (int j = 0; j <= m; ++j) c[static_cast<std::size_t>(j)] = node_value(m, j);
    return c;
}

Column TreeEngine::cond_exp(const Column& values, int at, int from) const {
    if (at < from) {
        throw std::invalid_argument("cond_exp: target index precedes conditioning index");
    }
    int m = level(at);
    const int target = level(from);
    if (values.size() != static_cast<std::size_t>(m + 1)) {
        throw std::invalid_argument("cond_exp: column width does not match level");
    }
    Column v = values;
    while (m > target) {
        for (int j = 0; j < m; ++j) {
            v[static_cast<std::size_t>(j)] =
                0.5 * (v[static_cast<std::size_t>(j)] + v[static_cast<std::size_t>(j + 1)]);
        }
        v.pop_back();
        --m;
    }
    return v;
}

Column TreeEngine::delayed_read(const Column& values, int at, int from) const {
    if (at > from) {
        throw std::invalid_argument("delayed_read: source index is after the reading index");
    }
    int m = level(at);
    const int target = level(from);
    Column v = values;
    // Child j at level m + 1 came from j - 1 with probability j/(m+1), from j otherwise.
    while (m < target) {
        Column next(static_cast<std::size_t>(m + 2));
        for (int j = 0; j <= m + 1; ++j) {
            const double up = static_cast<double>(j) / (m + 1);
            double acc = 0.0;
            if (j > 0) acc += up * v[static_cast<std::size_t>(j - 1)];
            if (j <= m) acc += (1.0 - up) * v[static_cast<std::size_t>(j)];
            next[static_cast<std::size_t>(j)] = acc;
        }
        v = std::move(next);
        ++m;
    }
    return v;
}

Column TreeEngine::martingale_coefficient(const Column& next, int k) const {
    if (k >= grid_.T_index()) {
        throw std::invalid_argument("martingale_coefficient: no increment after the terminal level");
    }
    const int m = level(k);
    if (level(k + 1) == m) return Column(static_cast<std::size_t>(m + 1), 0.0);
    Column z(static_cast<std::size_t>(m + 1));
    for (int j = 0; j <= m; ++j) {
        z[static_cast<std::size_t>(j)] =
            (next[static_cast<std::size_t>(j + 1)] - next[static_cast<std::size_t>(j)]) / (2.0 * sqrt_dt_);
    }
    return z;
}

Column TreeEngine::forward_step(const Column& x, const Column& drift, const Column& diffusion, int k) const {
    const int m = level(k);
    const double dt = grid_.dt();
    if (level(k + 1) == m) {
        Column out(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) out[j] = x[j] + drift[j] * dt;
        return out;
    }
    // Projected onto the recombined child: E[X_{k+1} | B_{k+1}].
    Column out(static_cast<std::size_t>(m + 2));
    for (int j = 0; j <= m + 1; ++j) {
        const double up = static_cast<double>(j) / (m + 1);
        double acc = 0.0;
        if (j > 0) {
            const auto p = static_cast<std::size_t>(j - 1);
            acc += up * (x[p] + drift[p] * dt + diffusion[p] * sqrt_dt_);
        }
        if (j <= m) {
            const auto p = static_cast<std::size_t>(j);
            acc += (1.0 - up) * (x[p] + drift[p] * dt - diffusion[p] * sqrt_dt_);
        }
        out[static_cast<std::size_t>(j)] = acc;
    }
    return out;
}

std::vector<double> TreeEngine::weights(int index) const {
    const int m = level(index);
    std::vector<double> w(static_cast<std::size_t>(m + 1));
    for (int j = 0; j <= m; ++j) w[static_cast<std::size_t>(j)] = binom_prob(m, j);
    return w;
}

double TreeEngine::expectation(const Column& values, int index) const {
    // Backward averaging is exact and avoids binomial round-off.
    return cond_exp(values, index, std::min(index, grid_.t0_index()))[0];
}

}  // namespace adbsde
