#include "adbsde/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace adbsde {

namespace {

ScalarField shifted(const ScalarField& f, double eps) {
    if (!f) return [eps](double, double) { return eps; };
    return [f, eps](double t, double b) { return f(t, b) + eps; };
}

// sup over nodes of |a - b|^2 plus sum_k dt E[|a - b|^2 + |c - d|^2] on the solve window.
std::pair<double, double> distance(const Engine& e, const NodeProcess& a, const NodeProcess& b,
                                   const NodeProcess* c, const NodeProcess* d, int from) {
    const TimeGrid& g = e.grid();
    double sup = 0.0, integral = 0.0;
    for (int k = from; k <= g.T_index(); ++k) {
        Column sq(a[k].size());
        for (std::size_t i = 0; i < sq.size(); ++i) {
            const double dy = a[k][i] - b[k][i];
            sup = std::max(sup, std::abs(dy));
            const double dz = c != nullptr ? (*c)[k][i] - (*d)[k][i] : 0.0;
            sq[i] = dy * dy + dz * dz;
        }
        if (k < g.T_index()) integral += g.dt() * e.expectation(sq, k);
    }
    return {sup, sup * sup + integral};
}

}  // namespace

DependenceReport continuous_dependence_probe(const ProblemSpec& base, const std::vector<double>& eps,
                                             const Engine& engine, const SolverConfig& config) {
    DependenceReport rep;
    const bool bsde = base.kind == ProblemKind::bsde;
    BsdeSolution yb;
    SdeSolution xb;
    if (bsde) {
        auto [s, r] = solve_bsde(base, engine, config);
        if (!r.converged) throw std::invalid_argument("dependence probe: base problem does not converge");
        yb = std::move(s);
    } else {
        auto [s, r] = solve_sde(base, engine, config);
        if (!r.converged) throw std::invalid_argument("dependence probe: base problem does not converge");
        xb = std::move(s);
    }

    for (double e : eps) {
        ProblemSpec p = base;
        DependenceRow row;
        row.eps = e;
        if (bsde) {
            p.generator.forcing = shifted(base.generator.forcing, e);
            const auto [s, r] = solve_bsde(p, engine, config);
            std::tie(row.sup_diff, row.distance) =
                distance(engine, s.Y, yb.Y, &s.Z, &yb.Z, engine.grid().t0_index());
        } else {
            p.drift.forcing = shifted(base.drift.forcing, e);
            const auto [s, r] = solve_sde(p, engine, config);
            std::tie(row.sup_diff, row.distance) = distance(engine, s.X, xb.X, nullptr, nullptr, p.start());
        }
        row.ratio = e != 0.0 ? row.distance / (e * e) : 0.0;
        rep.rows.push_back(row);
    }

    std::vector<DependenceRow> sorted;
    for (const auto& r : rep.rows) {
        if (r.eps != 0.0) sorted.push_back(r);
    }
    std::sort(sorted.begin(), sorted.end(),
              [](const DependenceRow& a, const DependenceRow& b) { return std::abs(a.eps) > std::abs(b.eps); });
    rep.bounded = true;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i].ratio > 1.2 * sorted[i - 1].ratio) rep.bounded = false;
    }
    rep.linear_scaling = true;
    for (const auto& a : sorted) {
        for (const auto& b : sorted) {
            if (std::abs(b.eps - 0.5 * a.eps) > 1e-12 * std::abs(a.eps) || a.sup_diff == 0.0) continue;
            if (std::abs(2.0 * b.sup_diff / a.sup_diff - 1.0) > 0.05) rep.linear_scaling = false;
        }
    }
    return rep;
}

}  // namespace adbsde
