#pragma once

#include "adbsde/timegrid.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace adbsde {

/// Values of one process at one grid index: one entry per tree node
/// (level-ordered, node j has Brownian value (2j - k) sqrt(dt)) or per path.
using Column = std::vector<double>;

/// A process on the full extended horizon, one Column per grid index.
/// Column widths follow the owning engine's `width(index)`.
class NodeProcess {
public:
    NodeProcess() = default;
    explicit NodeProcess(std::vector<Column> columns) : columns_(std::move(columns)) {}

    [[nodiscard]] std::size_t size() const { return columns_.size(); }
    [[nodiscard]] Column& operator[](int k) { return columns_.at(static_cast<std::size_t>(k)); }
    [[nodiscard]] const Column& operator[](int k) const { return columns_.at(static_cast<std::size_t>(k)); }
    [[nodiscard]] std::vector<Column>& columns() { return columns_; }
    [[nodiscard]] const std::vector<Column>& columns() const { return columns_; }

private:
    std::vector<Column> columns_;
};

enum class EngineKind { tree, montecarlo };

/// Weighted sample of a column, used for summary statistics.
struct WeightedColumn {
    std::span<const double> values;
    std::vector<double> weights;
};

/// The driving Brownian structure plus its conditional-expectation operator.
///
/// Conditioning is always onto the sigma-field of a grid index. Indices
/// before t0 carry no randomness; indices after T carry F_T-measurable
/// values, so every index maps to a "level" in [0, window_steps].
class Engine {
public:
    virtual ~Engine() = default;

    [[nodiscard]] virtual EngineKind kind() const = 0;
    [[nodiscard]] const TimeGrid& grid() const { return grid_; }

    /// Information level of a grid index, clamped into the solve window.
    [[nodiscard]] int level(int index) const;
    [[nodiscard]] virtual std::size_t width(int index) const = 0;

    /// Brownian value B_{t} - B_{t0} at each node/path of index k.
    [[nodiscard]] virtual Column brownian(int index) const = 0;

    /// E[values_at | F_from], with values given at index `at` >= `from`.
    [[nodiscard]] virtual Column cond_exp(const Column& values, int at, int from) const = 0;

    /// Reads an earlier column (`at` <= `from`) on the information of `from`.
    /// Tree engines project onto the current node (E[values | B_from]);
    /// path bundles return the exact per-path value.
    [[nodiscard]] virtual Column delayed_read(const Column& values, int at, int from) const = 0;

    /// Discrete martingale-representation integrand at level index k,
    /// given the values at index k + 1.
    [[nodiscard]] virtual Column martingale_coefficient(const Column& next, int k) const = 0;

    /// Euler step from index k to k + 1: x + drift * dt + diffusion * dB.
    [[nodiscard]] virtual Column forward_step(const Column& x, const Column& drift,
                                              const Column& diffusion, int k) const = 0;

    /// Probability weights of the entries of a column at index k.
    [[nodiscard]] virtual std::vector<double> weights(int index) const = 0;

    /// E[values] for a column at index k.
    [[nodiscard]] virtual double expectation(const Column& values, int index) const = 0;

    /// Standard error of `expectation` (0 for exact engines).
    [[nodiscard]] virtual double standard_error(const Column& values, int index) const;

    [[nodiscard]] NodeProcess zeros() const;
    [[nodiscard]] NodeProcess constant(double c) const;
    [[nodiscard]] Column constant_column(double c, int index) const;

    /// Full-process conditional expectation onto index `from` of the column at `at`.
    [[nodiscard]] Column cond_exp(const NodeProcess& p, int from, int at) const {
        return cond_exp(p[at], at, from);
    }

protected:
    explicit Engine(TimeGrid grid) : grid_(std::move(grid)) {}
    TimeGrid grid_;
};

/// Recombining Bernoulli tree with increments +/- sqrt(dt), probability 1/2.
class TreeEngine final : public Engine {
public:
    explicit TreeEngine(TimeGrid grid);

    [[nodiscard]] EngineKind kind() const override { return EngineKind::tree; }
    [[nodiscard]] std::size_t width(int index) const override;
    [[nodiscard]] Column brownian(int index) const override;
    [[nodiscard]] Column cond_exp(const Column& values, int at, int from) const override;
    [[nodiscard]] Column delayed_read(const Column& values, int at, int from) const override;
    [[nodiscard]] Column martingale_coefficient(const Column& next, int k) const override;
    [[nodiscard]] Column forward_step(const Column& x, const Column& drift, const Column& diffusion,
                                      int k) const override;
    [[nodiscard]] std::vector<double> weights(int index) const override;
    [[nodiscard]] double expectation(const Column& values, int index) const override;

    using Engine::cond_exp;

    [[nodiscard]] int depth() const { return grid_.window_steps(); }
    /// Brownian value at (level, node).
    [[nodiscard]] double node_value(int level, int node) const;

private:
    double sqrt_dt_;
    // log binomial coefficients, ln C(n, k) for n <= depth
    std::vector<std::vector<double>> log_binom_;
    [[nodiscard]] double binom_prob(int n, int k) const;
};

/// Monte Carlo configuration for the path-bundle engine.
struct BundleOptions {
    std::size_t path_count = 100000;
    std::uint64_t seed = 42;
    int basis_degree = 3;
    unsigned workers = 1;
};

/// Bundle of simulated Brownian paths with regression-based conditioning.
///
/// Paths are generated in fixed chunks, each seeded from (seed, chunk), and
/// every reduction accumulates per-chunk partials in chunk order, so results
/// do not depend on the worker count.
class BundleEngine final : public Engine {
public:
    BundleEngine(TimeGrid grid, BundleOptions options);

    [[nodiscard]] EngineKind kind() const override { return EngineKind::montecarlo; }
    [[nodiscard]] std::size_t width(int) const override { return opts_.path_count; }
    [[nodiscard]] Column brownian(int index) const override;
    [[nodiscard]] Column cond_exp(const Column& values, int at, int from) const override;
    [[nodiscard]] Column delayed_read(const Column& values, int at, int from) const override;
    [[nodiscard]] Column martingale_coefficient(const Column& next, int k) const override;
    [[nodiscard]] Column forward_step(const Column& x, const Column& drift, const Column& diffusion,
                                      int k) const override;
    [[nodiscard]] std::vector<double> weights(int index) const override;
    [[nodiscard]] double expectation(const Column& values, int index) const override;
    [[nodiscard]] double standard_error(const Column& values, int index) const override;

    using Engine::cond_exp;

    [[nodiscard]] const BundleOptions& options() const { return opts_; }
    /// Brownian increment B_{k+1} - B_k per path (zero outside the window).
    [[nodiscard]] const Column& increment(int k) const;

    static constexpr std::size_t kChunk = 4096;

private:
    BundleOptions opts_;
    std::vector<Column> increments_;  // per window step
    std::vector<Column> levels_;      // Brownian value per window level

    /// Least-squares projection of `target` on polynomials of `regressor`.
    [[nodiscard]] Column regress(const Column& target, const Column& regressor) const;
    [[nodiscard]] double chunked_sum(const Column& v) const;
};

/// Builds the tree over the grid's solve window.
std::unique_ptr<TreeEngine> build_tree(const TimeGrid& grid);

/// Samples a reproducible path bundle; path_count < 2 is rejected.
std::unique_ptr<BundleEngine> sample_paths(const TimeGrid& grid, std::size_t path_count,
                                           std::uint64_t seed, int basis_degree = 3,
                                           unsigned workers = 1);

enum class NormSign { plus, minus };

/// sqrt(E[sum_k dt (y_k^2 + z_k^2) e^{+/- beta t_k}]), left rectangle rule on [t0 - l, T + u).
/// Pass an empty z to measure y alone.
double beta_norm(const Engine& engine, const NodeProcess& y, const NodeProcess& z, double beta,
                 NormSign sign);

/// Element-wise a - b.
NodeProcess difference(const NodeProcess& a, const NodeProcess& b);

}  // namespace adbsde
