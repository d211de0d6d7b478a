#include "adbsde/coefficients.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace adbsde {

namespace {

NodeProcess random_process(const Engine& e, std::mt19937_64& rng, double amplitude) {
    std::normal_distribution<double> normal(0.0, amplitude);
    NodeProcess p = e.zeros();
    for (auto& col : p.columns()) {
        for (double& v : col) v = normal(rng);
    }
    return p;
}

NodeProcess abs_diff(const NodeProcess& a, const NodeProcess& b) {
    NodeProcess d = difference(a, b);
    for (auto& col : d.columns()) {
        for (double& v : col) v = std::abs(v);
    }
    return d;
}

// sum_r w_r E[|d|_{t+r} | F_t], with delayed values projected like the coefficient reads.
Column lag_distance(const LagMeasure& m, const NodeProcess& d, int t, const Engine& e) {
    Column acc(e.width(t), 0.0);
    for (std::size_t j = 0; j < m.size(); ++j) {
        const int idx = t + m.offsets[j];
        Column r = idx < t ? e.delayed_read(d[idx], idx, t) : idx == t ? d[idx] : e.cond_exp(d[idx], idx, t);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += m.weights[j] * r[i];
    }
    return acc;
}

bool is_sde(const CoefficientSpec& s) { return s.kind != CoefficientKind::generator; }

}  // namespace

AuditReport lipschitz_audit(const CoefficientSpec& spec, const Engine& engine, int probe_count,
                            std::uint64_t seed, const std::optional<LipschitzDecl>& as) {
    if (probe_count < 1) throw std::invalid_argument("probe_count must be at least 1");
    const LipschitzDecl decl = as.value_or(spec.lipschitz);
    if (decl.tag == Assumption::none) {
        throw std::invalid_argument("coefficient declares no Lipschitz assumption to audit");
    }
    const TimeGrid& g = engine.grid();
    const double dt = g.dt();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> amp(0.1, 3.0);

    AuditReport rep;
    rep.assumption = decl.tag;
    rep.declared = decl.constant;

    for (int p = 0; p < probe_count; ++p) {
        const int mode = p % 3;  // 0: perturb both, 1: first argument only, 2: second only
        NodeProcess y = random_process(engine, rng, amp(rng));
        NodeProcess z = random_process(engine, rng, amp(rng));
        NodeProcess y2 = y, z2 = z;
        if (mode != 2 || is_sde(spec)) y2 = difference(y, random_process(engine, rng, amp(rng)));
        if (mode != 1 && !is_sde(spec)) z2 = difference(z, random_process(engine, rng, amp(rng)));

        const PathView v1 = is_sde(spec) ? PathView(engine, nullptr, nullptr, &y) : PathView(engine, &y, &z);
        const PathView v2 = is_sde(spec) ? PathView(engine, nullptr, nullptr, &y2) : PathView(engine, &y2, &z2);
        const NodeProcess dy = abs_diff(y, y2);
        const NodeProcess dz = abs_diff(z, z2);

        double lhs = 0.0;
        for (int t = g.t0_index(); t < g.T_index(); ++t) {
            const Column a = eval_coefficient(spec, t, v1);
            const Column b = eval_coefficient(spec, t, v2);
            Column dg(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) dg[i] = std::abs(a[i] - b[i]);

            if (decl.tag == Assumption::A2 || decl.tag == Assumption::B2) {
                Column sq(dg.size());
                for (std::size_t i = 0; i < dg.size(); ++i) sq[i] = dg[i] * dg[i];
                lhs += dt * engine.expectation(sq, t);
                continue;
            }
            Column dist;
            switch (decl.tag) {
                case Assumption::A1: {
                    dist = lag_distance(decl.measure, dy, t, engine);
                    const Column zd = lag_distance(decl.measure, dz, t, engine);
                    for (std::size_t i = 0; i < dist.size(); ++i) dist[i] += zd[i];
                    break;
                }
                case Assumption::A1p:
                    dist = lag_distance(decl.measure, dy, t, engine);
                    for (std::size_t i = 0; i < dist.size(); ++i) dist[i] += dz[t][i];
                    break;
                case Assumption::A1pp:
                    dist = dy[t];
                    for (std::size_t i = 0; i < dist.size(); ++i) dist[i] += dz[t][i];
                    break;
                case Assumption::B1:
                    dist = lag_distance(decl.measure, dy, t, engine);
                    break;
                default:
                    break;
            }
            for (std::size_t i = 0; i < dg.size(); ++i) {
                if (dist[i] < 1e-14) continue;
                const double ratio = dg[i] / dist[i];
                if (ratio > rep.max_ratio) {
                    rep.max_ratio = ratio;
                    std::ostringstream os;
                    os << "probe " << p << " (mode " << mode << "), index " << t << ", node " << i;
                    rep.worst_probe = os.str();
                }
            }
        }
        if (decl.tag == Assumption::A2 || decl.tag == Assumption::B2) {
            double rhs = 0.0;
            for (int k = 0; k < g.last_index(); ++k) {
                Column sq(dy[k].size());
                for (std::size_t i = 0; i < sq.size(); ++i) {
                    sq[i] = dy[k][i] * dy[k][i] + (is_sde(spec) ? 0.0 : dz[k][i] * dz[k][i]);
                }
                rhs += dt * engine.expectation(sq, k);
            }
            if (rhs > 0.0 && lhs / rhs > rep.max_ratio) {
                rep.max_ratio = lhs / rhs;
                rep.worst_probe = "probe " + std::to_string(p) + " (integrated)";
            }
        }
    }
    rep.passed = rep.max_ratio <= decl.constant * (1.0 + 1e-6);
    return rep;
}

}  // namespace adbsde
