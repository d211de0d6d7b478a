#include "adbsde/bsde_solver.hpp"

#include "adbsde/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace adbsde {

void SolveReport::finalize_gamma() {
    gamma_empirical.reset();
    if (iterations < 3) return;
    double g = 0.0;
    for (std::size_t i = 2; i < residuals.size(); ++i) {
        if (residuals[i - 1] < 1e-300) continue;
        g = std::max(g, residuals[i] / residuals[i - 1]);
    }
    gamma_empirical = g;
}

namespace {

Column square(const Column& c) {
    Column out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i] * c[i];
    return out;
}

// Broadcast of the root value onto every pre-horizon index.
void fill_pre_horizon(const Engine& e, NodeProcess& y, NodeProcess& z, double y0) {
    for (int k = 0; k < e.grid().t0_index(); ++k) {
        y[k] = e.constant_column(y0, k);
        z[k] = e.constant_column(0.0, k);
    }
}

void fill_terminal(const Engine& e, NodeProcess& y, NodeProcess& z, const ScalarField& xi, const ScalarField& eta) {
    const TimeGrid& g = e.grid();
    for (int k = g.T_index(); k <= g.last_index(); ++k) {
        y[k] = field_column(xi, e, k);
        z[k] = eta ? field_column(eta, e, k) : e.constant_column(0.0, k);
    }
}

}  // namespace

BsdeSolution backward_sweep(const Engine& engine, const NodeProcess& g_frozen, const ScalarField& xi,
                            const ScalarField& eta) {
    if (!xi) throw std::invalid_argument("backward_sweep: terminal value is missing");
    const TimeGrid& g = engine.grid();
    if (g_frozen.size() != static_cast<std::size_t>(g.size())) {
        throw std::invalid_argument("backward_sweep: frozen generator does not cover the grid");
    }
    BsdeSolution s;
    s.Y = engine.zeros();
    s.Z = engine.zeros();
    fill_terminal(engine, s.Y, s.Z, xi, eta);
    const double dt = g.dt();
    for (int k = g.T_index() - 1; k >= g.t0_index(); --k) {
        Column y = engine.cond_exp(s.Y[k + 1], k + 1, k);
        const Column& gk = g_frozen[k];
        for (std::size_t i = 0; i < y.size(); ++i) y[i] += gk[i] * dt;
        s.Y[k] = std::move(y);
        s.Z[k] = engine.martingale_coefficient(s.Y[k + 1], k);
    }
    s.Y0 = engine.expectation(s.Y[g.t0_index()], g.t0_index());
    fill_pre_horizon(engine, s.Y, s.Z, s.Y0);
    return s;
}

NodeProcess freeze_generator(const CoefficientSpec& generator, const Engine& engine, const NodeProcess& y,
                             const NodeProcess& z) {
    const TimeGrid& g = engine.grid();
    NodeProcess out = engine.zeros();
    const PathView view(engine, &y, &z);
    for (int k = g.t0_index(); k < g.T_index(); ++k) out[k] = eval_coefficient(generator, k, view);
    return out;
}

double default_beta(const ProblemSpec& problem) {
    const LipschitzDecl& d = problem.generator.lipschitz;
    if (d.tag != Assumption::A1) return 2.0;
    const ConstantMap c{{"K", d.constant}, {"l", problem.grid.l()}};
    const FeasibilityReport r = check_contraction(Condition::thm_2_2_i, c);
    return r.feasible ? r.beta_star : 2.0;
}

std::pair<BsdeSolution, SolveReport> solve_bsde(const ProblemSpec& problem, const Engine& engine,
                                                const SolverConfig& config, const NodeProcess* frozen_y) {
    if (problem.kind != ProblemKind::bsde) throw std::invalid_argument("solve_bsde: problem is not a BSDE");
    if (config.tol <= 0.0) throw std::invalid_argument("solve_bsde: tolerance must be positive");
    if (config.max_iter < 1) throw std::invalid_argument("solve_bsde: max_iter must be at least 1");
    const double beta = config.beta.value_or(default_beta(problem));
    if (!(beta > 0.0)) throw std::invalid_argument("solve_bsde: beta must be positive");

    const TimeGrid& g = engine.grid();
    SolveReport rep;
    rep.beta_used = beta;

    // Initial guess.
    BsdeSolution cur;
    cur.Y = engine.zeros();
    cur.Z = engine.zeros();
    fill_terminal(engine, cur.Y, cur.Z, problem.xi, problem.eta);
    if (config.initial_guess == InitialGuess::terminal_extension) {
        const Column& xiT = cur.Y[g.T_index()];
        for (int k = g.t0_index(); k < g.T_index(); ++k) cur.Y[k] = engine.cond_exp(xiT, g.T_index(), k);
    }
    cur.Y0 = engine.expectation(cur.Y[g.t0_index()], g.t0_index());
    fill_pre_horizon(engine, cur.Y, cur.Z, cur.Y0);

    const int anchor = problem.anchor_index.value_or(g.t0_index());
    int streak = 0;
    for (int n = 1; n <= config.max_iter; ++n) {
        const NodeProcess& yarg = frozen_y != nullptr ? *frozen_y : cur.Y;
        const NodeProcess gf = freeze_generator(problem.generator, engine, yarg, cur.Z);
        BsdeSolution next = backward_sweep(engine, gf, problem.xi, problem.eta);
        const double r = beta_norm(engine, difference(next.Y, cur.Y), difference(next.Z, cur.Z), beta,
                                   NormSign::plus);
        if (!rep.residuals.empty() && r >= rep.residuals.back() * (1.0 - 1e-9)) {
            ++streak;
        } else {
            streak = 0;
        }
        rep.residuals.push_back(r);
        rep.anchor_means.push_back(engine.expectation(next.Y[anchor], anchor));
        rep.iterations = n;
        cur = std::move(next);
        if (r <= config.tol) {
            rep.converged = true;
            rep.verdict_detail = "converged";
            break;
        }
        if (streak >= config.divergence_window) {
            rep.verdict_detail = "max_iter_nondecreasing";
            break;
        }
    }
    if (!rep.converged && rep.verdict_detail.empty()) {
        rep.verdict_detail = streak >= config.divergence_window ? "max_iter_nondecreasing" : "max_iter_slow";
    }
    rep.finalize_gamma();
    return {std::move(cur), std::move(rep)};
}

AprioriReport apriori_check(const Engine& engine, const BsdeSolution& solution, const NodeProcess& g_frozen,
                            double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("apriori_check: beta must be positive");
    const TimeGrid& g = engine.grid();
    const double dt = g.dt();
    const int i0 = g.t0_index();
    const int iT = g.T_index();
    AprioriReport r;

    const double y0sq = engine.expectation(square(solution.Y[i0]), i0);
    r.lhs = y0sq * std::exp(-beta * g.l());
    for (int k = 0; k < i0; ++k) r.lhs += dt * std::exp(beta * g.time_of(k)) * 0.5 * beta * y0sq;
    for (int k = i0; k < iT; ++k) {
        const Column& y = solution.Y[k];
        const Column& z = solution.Z[k];
        Column v(y.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = 0.5 * beta * y[i] * y[i] + z[i] * z[i];
        r.lhs += dt * std::exp(beta * g.time_of(k)) * engine.expectation(v, k);
    }

    const double xisq = engine.expectation(square(solution.Y[iT]), iT);
    double gsq = 0.0;
    r.rhs = xisq * std::exp(beta * g.T());
    for (int k = i0; k < iT; ++k) {
        const double e = engine.expectation(square(g_frozen[k]), k);
        gsq += dt * e;
        r.rhs += (2.0 / beta) * dt * std::exp(beta * g.time_of(k + 1)) * e;
    }
    r.margin = r.rhs - r.lhs;

    double sup = 0.0;
    for (int k = i0; k <= iT; ++k) sup = std::max(sup, engine.expectation(square(solution.Y[k]), k));
    const double denom = xisq + gsq;
    r.sup_ratio = denom > 0.0 ? sup / denom : 0.0;
    return r;
}

}  // namespace adbsde
