#include "adbsde/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace adbsde {

TimeGrid duality_grid(double T, double l, double u, int steps) {
    if (steps < 1) throw std::invalid_argument("duality grid needs at least one step");
    const double m = std::max(l, u);
    return make_grid(0.0, T, m, m, T / steps);
}

namespace {

void axpy(Column& acc, double a, const Column& x) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += a * x[i];
}

Column times(const Column& a, const Column& b) {
    Column out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

struct Pieces {
    Column terminal;  // E[X_T xi_T + int_T^{T+u} X_{s-u}(b_ xi + s_ eta) ds + int_t^T c X ds | F_t]
    Column delayed;   // E[int_t^{t+l} X_s (bbar Y_{s-l} + sbar Z_{s-l}) ds | F_t]
    double bbar_mass = 0.0;  // E[int_t^{t+l} X_s bbar ds]
};

Pieces representation(const LinearCoefficients& k, const Engine& e, const NodeProcess& X, const BsdeSolution& sol,
                      int t, int l_steps, int u_steps) {
    const TimeGrid& g = e.grid();
    const double dt = g.dt();
    const int iT = g.T_index();
    Pieces p;
    p.terminal = e.cond_exp(times(X[iT], sol.Y[iT]), iT, t);
    p.delayed.assign(e.width(t), 0.0);
    for (int i = iT; i < iT + u_steps; ++i) {
        const Column xr = e.delayed_read(X[i - u_steps], i - u_steps, i);
        Column v(xr.size());
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = xr[j] * (k.b_under * sol.Y[i][j] + k.sigma_under * sol.Z[i][j]);
        axpy(p.terminal, dt, e.cond_exp(v, i, t));
    }
    for (int i = t; i < iT; ++i) {
        axpy(p.terminal, dt * k.c, e.cond_exp(X[i], i, t));
    }
    for (int i = t; i < t + l_steps; ++i) {
        const Column yr = e.delayed_read(sol.Y[i - l_steps], i - l_steps, i);
        const Column zr = e.delayed_read(sol.Z[i - l_steps], i - l_steps, i);
        Column v(yr.size());
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = X[i][j] * (k.b_bar * yr[j] + k.sigma_bar * zr[j]);
        axpy(p.delayed, dt, e.cond_exp(v, i, t));
        p.bbar_mass += dt * k.b_bar * e.expectation(X[i], i);
    }
    return p;
}

}  // namespace

DualityReport verify_duality(const LinearCoefficients& k, double l, double u, const ScalarField& xi,
                             const ScalarField& eta, const std::vector<double>& t_list, const Engine& engine,
                             const SolverConfig& config) {
    const TimeGrid& g = engine.grid();
    if (g.l() + 1e-12 < std::max(l, u) || g.u() + 1e-12 < std::max(l, u)) {
        throw std::invalid_argument("duality grid must span max(l, u) on both sides");
    }
    if (t_list.empty()) throw std::invalid_argument("duality needs at least one time");
    const int l_steps = g.steps_of(l);
    const int u_steps = g.steps_of(u);

    const ProblemSpec bsde = linear_bsde(k, g, l, u, xi, eta);
    const auto [sol, srep] = solve_bsde(bsde, engine, config);

    auto solve_adjoint = [&](int start) {
        const ProblemSpec sde = linear_sde(k, g, l, u, start);
        SolverConfig c = config;
        c.beta.reset();
        return solve_sde(sde, engine, c).first.X;
    };

    DualityReport rep;
    bool have_root = false;
    for (std::size_t n = 0; n < t_list.size(); ++n) {
        const int t = g.index_of(t_list[n]);
        if (t < g.t0_index() || t > g.T_index()) throw std::invalid_argument("duality time outside [0, T]");
        const NodeProcess X = solve_adjoint(t);
        const Pieces p = representation(k, engine, X, sol, t, l_steps, u_steps);
        double gap = 0.0;
        Column rhs(p.terminal.size());
        for (std::size_t j = 0; j < rhs.size(); ++j) {
            rhs[j] = p.terminal[j] + p.delayed[j];
            gap = std::max(gap, std::abs(sol.Y[t][j] - rhs[j]));
        }
        if (n == 0) {
            rep.lhs = engine.expectation(sol.Y[t], t);
            rep.rhs = engine.expectation(rhs, t);
        }
        rep.times.push_back(g.time_of(t));
        rep.gaps.push_back(gap);
        if (t == g.t0_index()) {
            have_root = true;
            rep.denominator = 1.0 - p.bbar_mass;
            rep.denominator_safe = std::abs(rep.denominator) > 1e-8;
            if (rep.denominator_safe) {
                rep.closed_y0 = engine.expectation(p.terminal, t) / rep.denominator;
            }
        }
    }
    if (!have_root) {
        const NodeProcess X = solve_adjoint(g.t0_index());
        const Pieces p = representation(k, engine, X, sol, g.t0_index(), l_steps, u_steps);
        rep.denominator = 1.0 - p.bbar_mass;
        rep.denominator_safe = std::abs(rep.denominator) > 1e-8;
        if (rep.denominator_safe) rep.closed_y0 = engine.expectation(p.terminal, g.t0_index()) / rep.denominator;
    }
    return rep;
}

}  // namespace adbsde
