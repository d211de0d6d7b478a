#include "adbsde/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace adbsde {

int Engine::level(int index) const {
    return std::clamp(index - grid_.t0_index(), 0, grid_.window_steps());
}

double Engine::standard_error(const Column&, int) const { return 0.0; }

Column Engine::constant_column(double c, int index) const { return Column(width(index), c); }

NodeProcess Engine::zeros() const { return constant(0.0); }

NodeProcess Engine::constant(double c) const {
    std::vector<Column> cols;
    cols.reserve(grid_.size());
    for (int k = 0; k <= grid_.last_index(); ++k) cols.push_back(constant_column(c, k));
    return NodeProcess(std::move(cols));
}

double beta_norm(const Engine& engine, const NodeProcess& y, const NodeProcess& z, double beta,
                 NormSign sign) {
    const TimeGrid& g = engine.grid();
    const double s = sign == NormSign::plus ? beta : -beta;
    double total = 0.0;
    for (int k = 0; k < g.last_index(); ++k) {
        Column sq(y[k].size());
        for (std::size_t i = 0; i < sq.size(); ++i) {
            const double zv = z.size() ? z[k][i] : 0.0;
            sq[i] = y[k][i] * y[k][i] + zv * zv;
        }
        total += engine.expectation(sq, k) * std::exp(s * g.time_of(k)) * g.dt();
    }
    return std::sqrt(std::max(total, 0.0));
}

NodeProcess difference(const NodeProcess& a, const NodeProcess& b) {
    if (a.size() != b.size()) throw std::invalid_argument("process size mismatch");
    NodeProcess out = a;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const auto& bc = b.columns()[k];
        auto& oc = out.columns()[k];
        if (oc.size() != bc.size()) throw std::invalid_argument("column width mismatch");
        for (std::size_t i = 0; i < oc.size(); ++i) oc[i] -= bc[i];
    }
    return out;
}

}  // namespace adbsde
