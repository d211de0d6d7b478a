#include "adbsde/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace adbsde {

namespace {

NodeProcess random_process(const Engine& e, std::mt19937_64& rng, double amplitude, bool nonnegative) {
    std::normal_distribution<double> normal(0.0, amplitude);
    NodeProcess p = e.zeros();
    for (auto& col : p.columns()) {
        for (double& v : col) v = nonnegative ? std::abs(normal(rng)) : normal(rng);
    }
    return p;
}

NodeProcess sum(const NodeProcess& a, const NodeProcess& b) {
    NodeProcess out = a;
    for (std::size_t k = 0; k < out.size(); ++k) {
        for (std::size_t i = 0; i < out.columns()[k].size(); ++i) out.columns()[k][i] += b.columns()[k][i];
    }
    return out;
}

// min over indices [from, to] and nodes of (a - b)
double min_gap(const NodeProcess& a, const NodeProcess& b, int from, int to) {
    double m = std::numeric_limits<double>::infinity();
    for (int k = from; k <= to; ++k) {
        for (std::size_t i = 0; i < a[k].size(); ++i) m = std::min(m, a[k][i] - b[k][i]);
    }
    return m;
}

bool is_a1p(const CoefficientSpec& s) {
    return s.lipschitz.tag == Assumption::A1p || s.lipschitz.tag == Assumption::A1pp;
}

constexpr double kSlack = 1e-12;

// g >= g' along the upper solution, g' monotone in the y-path, xi >= xi'.
std::string audit_bsde(const ProblemSpec& up, const ProblemSpec& lo, const Engine& e, const BsdeSolution& sol,
                       int probes, std::mt19937_64& rng) {
    if (!is_a1p(up.generator) || !is_a1p(lo.generator)) return "generators must be tagged A1'";
    const TimeGrid& g = e.grid();
    const PathView at_sol(e, &sol.Y, &sol.Z);
    for (int k = g.t0_index(); k < g.T_index(); ++k) {
        const Column a = eval_coefficient(up.generator, k, at_sol);
        const Column b = eval_coefficient(lo.generator, k, at_sol);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] < b[i] - kSlack) return "g >= g' fails at index " + std::to_string(k);
        }
    }
    for (int p = 0; p < probes; ++p) {
        const NodeProcess y2 = random_process(e, rng, 1.0, false);
        const NodeProcess y1 = sum(y2, random_process(e, rng, 1.0, true));
        const NodeProcess z = random_process(e, rng, 1.0, false);
        const PathView v1(e, &y1, &z), v2(e, &y2, &z);
        for (int k = g.t0_index(); k < g.T_index(); ++k) {
            const Column a = eval_coefficient(lo.generator, k, v1);
            const Column b = eval_coefficient(lo.generator, k, v2);
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (a[i] < b[i] - kSlack) return "g' is not monotone in y (probe " + std::to_string(p) + ")";
            }
        }
    }
    for (int k = g.T_index(); k <= g.last_index(); ++k) {
        const Column a = field_column(up.xi, e, k);
        const Column b = field_column(lo.xi, e, k);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] < b[i] - kSlack) return "xi >= xi' fails at index " + std::to_string(k);
        }
    }
    return {};
}

// shared diffusion, b >= b' along the upper solution, b' monotone, theta >= theta'.
std::string audit_sde(const ProblemSpec& up, const ProblemSpec& lo, const Engine& e, const SdeSolution& sol,
                      int probes, std::mt19937_64& rng) {
    const TimeGrid& g = e.grid();
    if (up.start() != lo.start()) return "start times differ";
    for (int p = 0; p < probes; ++p) {
        const NodeProcess x2 = random_process(e, rng, 1.0, false);
        const NodeProcess x1 = sum(x2, random_process(e, rng, 1.0, true));
        const PathView v1(e, nullptr, nullptr, &x1), v2(e, nullptr, nullptr, &x2);
        for (int k = up.start(); k < g.T_index(); ++k) {
            const Column s1 = eval_coefficient(up.diffusion, k, v1);
            const Column s2 = eval_coefficient(lo.diffusion, k, v1);
            const Column a = eval_coefficient(lo.drift, k, v1);
            const Column b = eval_coefficient(lo.drift, k, v2);
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (std::abs(s1[i] - s2[i]) > kSlack) return "diffusions are not shared";
                if (a[i] < b[i] - kSlack) return "b' is not monotone in x (probe " + std::to_string(p) + ")";
            }
        }
    }
    const PathView at_sol(e, nullptr, nullptr, &sol.X);
    for (int k = up.start(); k < g.T_index(); ++k) {
        const Column a = eval_coefficient(up.drift, k, at_sol);
        const Column b = eval_coefficient(lo.drift, k, at_sol);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] < b[i] - kSlack) return "b >= b' fails at index " + std::to_string(k);
        }
    }
    for (int k = 0; k <= up.start(); ++k) {
        const Column a = field_column(up.theta, e, k);
        const Column b = field_column(lo.theta, e, k);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] < b[i] - kSlack) return "theta >= theta' fails at index " + std::to_string(k);
        }
    }
    return {};
}

}  // namespace

ComparisonReport run_comparison(const ProblemSpec& upper, const ProblemSpec& lower, const Engine& engine,
                                const SolverConfig& config, int probe_count, std::uint64_t seed) {
    ComparisonReport rep;
    if (upper.kind != lower.kind) {
        rep.failed_hypothesis = "problems are of different kinds";
        return rep;
    }
    const TimeGrid& g = engine.grid();
    std::mt19937_64 rng(seed);
    constexpr int kMaxChain = 60;

    if (upper.kind == ProblemKind::bsde) {
        const auto [up, up_rep] = solve_bsde(upper, engine, config);
        rep.failed_hypothesis = audit_bsde(upper, lower, engine, up, probe_count, rng);
        rep.hypotheses_passed = rep.failed_hypothesis.empty();
        if (!rep.hypotheses_passed) return rep;
        const auto [lo, lo_rep] = solve_bsde(lower, engine, config);
        rep.min_difference = min_gap(up.Y, lo.Y, g.t0_index(), g.last_index());

        // Monotone chain: freeze the previous member in the y-argument of g'.
        NodeProcess prev = up.Y;
        rep.chain_monotone = true;
        for (int n = 1; n <= kMaxChain; ++n) {
            const auto [next, r] = solve_bsde(lower, engine, config, &prev);
            const double step = -min_gap(prev, next.Y, g.t0_index(), g.last_index());
            rep.chain_worst_increase = std::max(rep.chain_worst_increase, step);
            if (step > kSlack) rep.chain_monotone = false;
            const double moved = beta_norm(engine, difference(prev, next.Y), NodeProcess{}, r.beta_used,
                                           NormSign::plus);
            prev = next.Y;
            rep.chain_length = n;
            if (moved <= config.tol) break;
        }
        return rep;
    }

    const auto [up, up_rep] = solve_sde(upper, engine, config);
    rep.failed_hypothesis = audit_sde(upper, lower, engine, up, probe_count, rng);
    rep.hypotheses_passed = rep.failed_hypothesis.empty();
    if (!rep.hypotheses_passed) return rep;
    const auto [lo, lo_rep] = solve_sde(lower, engine, config);
    rep.min_difference = min_gap(up.X, lo.X, 0, g.last_index());

    // Monotone chain: lower coefficients evaluated on the previous member.
    NodeProcess prev = up.X;
    rep.chain_monotone = true;
    for (int n = 1; n <= kMaxChain; ++n) {
        NodeProcess b = engine.zeros(), s = engine.zeros();
        const PathView view(engine, nullptr, nullptr, &prev);
        for (int k = lower.start(); k < g.T_index(); ++k) {
            b[k] = eval_coefficient(lower.drift, k, view);
            s[k] = eval_coefficient(lower.diffusion, k, view);
        }
        const SdeSolution next = forward_sweep(engine, b, s, lower);
        const double step = -min_gap(prev, next.X, 0, g.last_index());
        rep.chain_worst_increase = std::max(rep.chain_worst_increase, step);
        if (step > kSlack) rep.chain_monotone = false;
        const double moved =
            beta_norm(engine, difference(prev, next.X), NodeProcess{}, config.beta.value_or(2.0), NormSign::minus);
        prev = next.X;
        rep.chain_length = n;
        if (moved <= config.tol) break;
    }
    return rep;
}

}  // namespace adbsde
