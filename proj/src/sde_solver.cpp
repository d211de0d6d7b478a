#include "adbsde/sde_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace adbsde {

namespace {

Column square(const Column& c) {
    Column out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i] * c[i];
    return out;
}

void apply_extension(const Engine& e, NodeProcess& x, Extension ext) {
    const TimeGrid& g = e.grid();
    for (int k = g.T_index() + 1; k <= g.last_index(); ++k) {
        x[k] = ext == Extension::hold ? x[g.T_index()] : e.constant_column(0.0, k);
    }
}

}  // namespace

SdeSolution forward_sweep(const Engine& engine, const NodeProcess& b_frozen, const NodeProcess& sigma_frozen,
                          const ProblemSpec& problem) {
    if (!problem.theta) throw std::invalid_argument("forward_sweep: initial segment is missing");
    const TimeGrid& g = engine.grid();
    const int start = problem.start();
    if (start < g.t0_index() || start > g.T_index()) {
        throw std::invalid_argument("forward_sweep: start index outside the solve window");
    }
    SdeSolution s;
    s.X = engine.zeros();
    for (int k = 0; k <= start; ++k) s.X[k] = field_column(problem.theta, engine, k);
    for (int k = start; k < g.T_index(); ++k) {
        s.X[k + 1] = engine.forward_step(s.X[k], b_frozen[k], sigma_frozen[k], k);
    }
    apply_extension(engine, s.X, problem.extension);
    return s;
}

std::pair<SdeSolution, SolveReport> solve_sde(const ProblemSpec& problem, const Engine& engine,
                                              const SolverConfig& config) {
    if (problem.kind != ProblemKind::sde) throw std::invalid_argument("solve_sde: problem is not an SDE");
    if (config.tol <= 0.0) throw std::invalid_argument("solve_sde: tolerance must be positive");
    if (config.max_iter < 1) throw std::invalid_argument("solve_sde: max_iter must be at least 1");
    const double beta = config.beta.value_or(2.0);
    if (!(beta > 0.0)) throw std::invalid_argument("solve_sde: beta must be positive");

    const TimeGrid& g = engine.grid();
    const int start = problem.start();
    SolveReport rep;
    rep.beta_used = beta;

    SdeSolution cur;
    cur.X = engine.zeros();
    for (int k = 0; k <= start; ++k) cur.X[k] = field_column(problem.theta, engine, k);
    if (config.initial_guess == InitialGuess::terminal_extension) {
        const double ts = g.time_of(start);
        for (int k = start + 1; k <= g.T_index(); ++k) {
            const Column b = engine.brownian(k);
            Column c(b.size());
            for (std::size_t i = 0; i < c.size(); ++i) c[i] = problem.theta(ts, b[i]);
            cur.X[k] = std::move(c);
        }
    }
    apply_extension(engine, cur.X, problem.extension);

    const int anchor = problem.anchor_index.value_or(start);
    int streak = 0;
    for (int n = 1; n <= config.max_iter; ++n) {
        NodeProcess b = engine.zeros();
        NodeProcess s = engine.zeros();
        const PathView view(engine, nullptr, nullptr, &cur.X);
        for (int k = start; k < g.T_index(); ++k) {
            b[k] = eval_coefficient(problem.drift, k, view);
            s[k] = eval_coefficient(problem.diffusion, k, view);
        }
        SdeSolution next = forward_sweep(engine, b, s, problem);
        const double r = beta_norm(engine, difference(next.X, cur.X), NodeProcess{}, beta, NormSign::minus);
        if (!rep.residuals.empty() && r >= rep.residuals.back() * (1.0 - 1e-9)) {
            ++streak;
        } else {
            streak = 0;
        }
        rep.residuals.push_back(r);
        rep.anchor_means.push_back(engine.expectation(next.X[anchor], anchor));
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

AprioriReport apriori_check_sde(const Engine& engine, const SdeSolution& solution, const NodeProcess& b_frozen,
                                const NodeProcess& sigma_frozen, int start, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("apriori_check_sde: beta must be positive");
    const TimeGrid& g = engine.grid();
    const double dt = g.dt();
    const int end = g.last_index();
    auto w = [&](int k) { return std::exp(-beta * g.time_of(k)); };
    AprioriReport r;

    r.lhs = engine.expectation(square(solution.X[end]), end) * w(end);
    for (int k = start; k < end; ++k) {
        r.lhs += 0.5 * beta * dt * w(k + 1) * engine.expectation(square(solution.X[k + 1]), k + 1);
    }

    const double x0sq = engine.expectation(square(solution.X[start]), start);
    double forcing = 0.0;
    r.rhs = x0sq * w(start);
    for (int k = start; k < g.T_index(); ++k) {
        const Column& b = b_frozen[k];
        const Column& s = sigma_frozen[k];
        Column v(b.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = (2.0 / beta) * b[i] * b[i] + s[i] * s[i];
        const double e = engine.expectation(v, k);
        r.rhs += dt * w(k) * e;
        Column raw(b.size());
        for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = b[i] * b[i] + s[i] * s[i];
        forcing += dt * engine.expectation(raw, k);
    }
    r.margin = r.rhs - r.lhs;

    double sup = 0.0;
    for (int k = start; k <= end; ++k) sup = std::max(sup, engine.expectation(square(solution.X[k]), k));
    const double denom = x0sq + forcing;
    r.sup_ratio = denom > 0.0 ? sup / denom : 0.0;
    return r;
}

}  // namespace adbsde
