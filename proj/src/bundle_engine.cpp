#include "adbsde/engine.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace adbsde {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Solves the small SPD normal-equation system in place (Gaussian elimination
// with partial pivoting; the basis is scaled so the system is well conditioned).
std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b, std::size_t n) {
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
        }
        if (std::abs(a[piv * n + col]) < 1e-300) {
            b[col] = 0.0;
            continue;
        }
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[piv * n + c]);
            std::swap(b[col], b[piv]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r * n + col] / a[col * n + col];
            for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        if (std::abs(a[i * n + i]) < 1e-300) continue;
        double s = b[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= a[i * n + c] * x[c];
        x[i] = s / a[i * n + i];
    }
    return x;
}

}  // namespace

BundleEngine::BundleEngine(TimeGrid grid, BundleOptions options)
    : Engine(std::move(grid)), opts_(options) {
    if (opts_.path_count < 2) {
        throw std::invalid_argument("path bundle needs at least 2 paths");
    }
    if (opts_.basis_degree < 0) {
        throw std::invalid_argument("basis degree must be non-negative");
    }
    const int n_steps = grid_.window_steps();
    const std::size_t n = opts_.path_count;
    const double sqrt_dt = std::sqrt(grid_.dt());
    increments_.assign(static_cast<std::size_t>(n_steps), Column(n));
    const std::size_t n_chunks = (n + kChunk - 1) / kChunk;
    detail::for_each_chunk(n_chunks, opts_.workers, [&](std::size_t c) {
        std::mt19937_64 rng(splitmix64(opts_.seed ^ splitmix64(c)));
        std::normal_distribution<double> normal(0.0, 1.0);
        const std::size_t end = std::min(n, (c + 1) * kChunk);
        for (std::size_t p = c * kChunk; p < end; ++p) {
            for (int m = 0; m < n_steps; ++m) {
                increments_[static_cast<std::size_t>(m)][p] = sqrt_dt * normal(rng);
            }
        }
    });
    levels_.assign(static_cast<std::size_t>(n_steps + 1), Column(n, 0.0));
    for (int m = 0; m < n_steps; ++m) {
        const auto& inc = increments_[static_cast<std::size_t>(m)];
        const auto& prev = levels_[static_cast<std::size_t>(m)];
        auto& next = levels_[static_cast<std::size_t>(m + 1)];
        for (std::size_t p = 0; p < n; ++p) next[p] = prev[p] + inc[p];
    }
}

std::unique_ptr<BundleEngine> sample_paths(const TimeGrid& grid, std::size_t path_count, std::uint64_t seed,
                                           int basis_degree, unsigned workers) {
    return std::make_unique<BundleEngine>(grid, BundleOptions{path_count, seed, basis_degree, workers});
}

const Column& BundleEngine::increment(int k) const {
    static const Column empty;
    const int m = level(k);
    if (level(k + 1) == m) return empty;
    return increments_.at(static_cast<std::size_t>(m));
}

Column BundleEngine::brownian(int index) const { return levels_[static_cast<std::size_t>(level(index))]; }

double BundleEngine::chunked_sum(const Column& v) const {
    const std::size_t n = v.size();
    const std::size_t n_chunks = (n + kChunk - 1) / kChunk;
    std::vector<double> partial(n_chunks, 0.0);
    detail::for_each_chunk(n_chunks, opts_.workers, [&](std::size_t c) {
        double s = 0.0;
        const std::size_t end = std::min(n, (c + 1) * kChunk);
        for (std::size_t p = c * kChunk; p < end; ++p) s += v[p];
        partial[c] = s;
    });
    double total = 0.0;
    for (double s : partial) total += s;
    return total;
}

Column BundleEngine::regress(const Column& target, const Column& regressor) const {
    const std::size_t n = target.size();
    const std::size_t dim = static_cast<std::size_t>(opts_.basis_degree) + 1;
    // Scale the regressor to unit order so the monomial basis stays well conditioned.
    double scale = std::sqrt(chunked_sum([&] {
                                 Column sq(n);
                                 for (std::size_t p = 0; p < n; ++p) sq[p] = regressor[p] * regressor[p];
                                 return sq;
                             }()) /
                             static_cast<double>(n));
    if (!(scale > 0.0)) scale = 1.0;

    const std::size_t n_chunks = (n + kChunk - 1) / kChunk;
    const std::size_t stride = dim * dim + dim;
    std::vector<double> partial(n_chunks * stride, 0.0);
    detail::for_each_chunk(n_chunks, opts_.workers, [&](std::size_t c) {
        double* acc = partial.data() + c * stride;
        std::vector<double> phi(dim);
        const std::size_t end = std::min(n, (c + 1) * kChunk);
        for (std::size_t p = c * kChunk; p < end; ++p) {
            const double x = regressor[p] / scale;
            phi[0] = 1.0;
            for (std::size_t d = 1; d < dim; ++d) phi[d] = phi[d - 1] * x;
            for (std::size_t i = 0; i < dim; ++i) {
                for (std::size_t j = 0; j < dim; ++j) acc[i * dim + j] += phi[i] * phi[j];
                acc[dim * dim + i] += phi[i] * target[p];
            }
        }
    });
    std::vector<double> a(dim * dim, 0.0), b(dim, 0.0);
    for (std::size_t c = 0; c < n_chunks; ++c) {
        const double* acc = partial.data() + c * stride;
        for (std::size_t i = 0; i < dim * dim; ++i) a[i] += acc[i];
        for (std::size_t i = 0; i < dim; ++i) b[i] += acc[dim * dim + i];
    }
    const std::vector<double> coef = solve_dense(std::move(a), std::move(b), dim);

    Column fitted(n);
    for (std::size_t p = 0; p < n; ++p) {
        const double x = regressor[p] / scale;
        double v = 0.0;
        for (std::size_t d = dim; d-- > 0;) v = v * x + coef[d];
        fitted[p] = v;
    }
    return fitted;
}

Column BundleEngine::cond_exp(const Column& values, int at, int from) const {
    if (at < from) {
        throw std::invalid_argument("cond_exp: target index precedes conditioning index");
    }
    const int lf = level(from);
    if (level(at) == lf) return values;
    if (lf == 0) return Column(values.size(), chunked_sum(values) / static_cast<double>(values.size()));
    return regress(values, levels_[static_cast<std::size_t>(lf)]);
}

Column BundleEngine::delayed_read(const Column& values, int at, int from) const {
    if (at > from) {
        throw std::invalid_argument("delayed_read: source index is after the reading index");
    }
    return values;
}

Column BundleEngine::martingale_coefficient(const Column& next, int k) const {
    if (k >= grid_.T_index()) {
        throw std::invalid_argument("martingale_coefficient: no increment after the terminal level");
    }
    const int m = level(k);
    const std::size_t n = next.size();
    if (level(k + 1) == m) return Column(n, 0.0);
    const auto& inc = increments_[static_cast<std::size_t>(m)];
    Column prod(n);
    for (std::size_t p = 0; p < n; ++p) prod[p] = next[p] * inc[p] / grid_.dt();
    if (m == 0) return Column(n, chunked_sum(prod) / static_cast<double>(n));
    return regress(prod, levels_[static_cast<std::size_t>(m)]);
}

Column BundleEngine::forward_step(const Column& x, const Column& drift, const Column& diffusion, int k) const {
    const Column& inc = increment(k);
    const double dt = grid_.dt();
    Column out(x.size());
    for (std::size_t p = 0; p < x.size(); ++p) {
        out[p] = x[p] + drift[p] * dt + (inc.empty() ? 0.0 : diffusion[p] * inc[p]);
    }
    return out;
}

std::vector<double> BundleEngine::weights(int) const {
    return std::vector<double>(opts_.path_count, 1.0 / static_cast<double>(opts_.path_count));
}

double BundleEngine::expectation(const Column& values, int) const {
    return chunked_sum(values) / static_cast<double>(values.size());
}

double BundleEngine::standard_error(const Column& values, int index) const {
    const double mean = expectation(values, index);
    Column dev(values.size());
    for (std::size_t p = 0; p < values.size(); ++p) dev[p] = (values[p] - mean) * (values[p] - mean);
    const double n = static_cast<double>(values.size());
    return std::sqrt(chunked_sum(dev) / (n - 1.0) / n);
}

}  // namespace adbsde
