#include "adbsde/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace adbsde {

namespace {

double get(const ParamMap& p, const std::string& key, double fallback) {
    auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

TimeGrid grid_from(const ParamMap& p, double t0, double T, double l, double u) {
    const double steps = get(p, "steps", 8.0);
    if (steps < 1.0 || std::floor(steps) != steps) {
        throw std::invalid_argument("steps must be a positive integer");
    }
    const double dt = get(p, "dt", (T - t0) / steps);
    return make_grid(t0, T, l, u, dt);
}

Term term(double c, LagMeasure lag, Target target, Wrap wrap = Wrap::raw, Anchor anchor = Anchor::relative) {
    Term t;
    t.constant = c;
    t.lag = std::move(lag);
    t.target = target;
    t.wrap = wrap;
    t.anchor = anchor;
    return t;
}

// Trapezoidal uniform law on the absolute interval [a, b], offsets counted from t0.
ScaledLag absolute_uniform(double a, double b, const TimeGrid& g) {
    const int ia = g.steps_of(a - g.t0(), "interval start");
    const int ib = g.steps_of(b - g.t0(), "interval end");
    if (ib <= ia) throw std::invalid_argument("interval needs a < b");
    ScaledLag s;
    const int n = ib - ia;
    for (int k = ia; k <= ib; ++k) {
        s.measure.offsets.push_back(k);
        s.measure.weights.push_back(((k == ia || k == ib) ? 0.5 : 1.0) / n);
    }
    s.scale = n * g.dt();
    return s;
}

ScalarField constant_field(double c) {
    return [c](double, double) { return c; };
}

void finalize(ProblemSpec& p) {
    if (p.kind == ProblemKind::bsde) {
        validate_coefficient(p.generator, p.grid);
    } else {
        validate_coefficient(p.drift, p.grid);
        validate_coefficient(p.diffusion, p.grid);
    }
}

ProblemSpec bsde_8(const ParamMap& pm) {
    const double T = get(pm, "T", 1.0);
    const double K = get(pm, "K", 0.25);
    const double l = get(pm, "l", T);
    const double u = get(pm, "u", 0.0);
    if (l < T) throw std::invalid_argument("bsde_8 reads y at t - T, so the delay span l must be >= T");
    if (!(T * K < 1.0)) throw std::invalid_argument("bsde_8 requires T*K < 1");
    ProblemSpec p;
    p.name = "bsde_8";
    p.grid = grid_from(pm, 0.0, T, l, u);
    const LagMeasure back = point_mass(-T, p.grid);
    p.generator.terms = {term(K, back, Target::y)};
    p.generator.lipschitz = {Assumption::A1p, K, back};
    p.xi = constant_field(1.0);
    p.eta = constant_field(0.0);
    const double y0 = 1.0 / (1.0 - T * K);
    p.reference = ReferenceSolution{
        [=](double t, double) { return t < 0.0 ? y0 : t < T ? (1.0 - t * K) / (1.0 - T * K) : 1.0; },
        constant_field(0.0)};
    return p;
}

ProblemSpec bsde_9(const ParamMap& pm) {
    const double T = get(pm, "T", 1.0);
    const double K = get(pm, "K", 0.25);
    const double l = get(pm, "l", T);
    const double u = get(pm, "u", 0.25);
    ProblemSpec p;
    p.name = "bsde_9";
    p.grid = grid_from(pm, 0.0, T, l, u);
    const LagMeasure ahead = point_mass(u, p.grid);
    const LagMeasure now = point_mass(0.0, p.grid);
    p.generator.terms = {term(K, ahead, Target::z, Wrap::cond_exp), term(-K, now, Target::z)};
    p.generator.lipschitz = {Assumption::A1, 2.0 * K, mix({ahead, now}, {0.5, 0.5})};
    p.xi = [](double t, double b) { return b * b - t; };
    p.eta = [](double, double b) { return 2.0 * b; };
    p.reference = ReferenceSolution{[](double t, double b) { return t < 0.0 ? 0.0 : b * b - t; },
                                    [](double t, double b) { return t < 0.0 ? 0.0 : 2.0 * b; }};
    return p;
}

ProblemSpec bsde_7(const ParamMap& pm) {
    const double T = get(pm, "T", 1.0);
    const double K = get(pm, "K", 0.25);
    const double l = get(pm, "l", T);
    const double u = get(pm, "u", 0.25);
    const double bound = std::sqrt(1.0 / (2.0 * std::exp(2.0 * T)));
    if (!(K < bound)) {
        throw std::invalid_argument("bsde_7 requires Lipschitz constant K < sqrt(1/(2 e^{2T})) = " +
                                    std::to_string(bound));
    }
    if (l < T) throw std::invalid_argument("bsde_7 reads y at t - T, so the delay span l must be >= T");
    ProblemSpec p;
    p.name = "bsde_7";
    p.grid = grid_from(pm, 0.0, T, l, u);
    const LagMeasure back = point_mass(-T, p.grid);
    const LagMeasure ahead = point_mass(u, p.grid);
    const LagMeasure now = point_mass(0.0, p.grid);
    p.generator.terms = {term(K, back, Target::y), term(K, ahead, Target::z, Wrap::cond_exp),
                         term(-K, now, Target::z)};
    // Three unit-weight reads: the constant against a probability measure is 3K.
    p.generator.lipschitz = {Assumption::A1, 3.0 * K, mix({back, ahead, now}, {1.0 / 3, 1.0 / 3, 1.0 / 3})};
    p.xi = [](double t, double b) { return b * b - t + 1.0; };
    p.eta = [](double, double b) { return 2.0 * b; };
    const double y0 = 1.0 / (1.0 - T * K);
    p.reference = ReferenceSolution{
        [=](double t, double b) {
            if (t < 0.0) return y0;
            return b * b - t + (t < T ? (1.0 - t * K) / (1.0 - T * K) : 1.0);
        },
        [](double t, double b) { return t < 0.0 ? 0.0 : 2.0 * b; }};
    return p;
}

ProblemSpec example_2_3(const ParamMap& pm) {
    const double T = get(pm, "T", 1.0);
    const double delta = get(pm, "delta", T / 2.0);
    const double xi_const = get(pm, "xi_const", 1.0);
    const double xi_slope = get(pm, "xi_slope", 0.0);
    if (!(delta >= 0.0 && delta < T)) throw std::invalid_argument("example_2_3 needs 0 <= delta < T");
    ProblemSpec p;
    p.name = "example_2_3";
    p.grid = grid_from(pm, 0.0, T, get(pm, "l", 0.0), get(pm, "u", 0.0));
    const int d = p.grid.steps_of(delta, "delta");
    p.generator.terms = {term(1.0 / (T - delta), LagMeasure{{d}, {1.0}}, Target::y, Wrap::cond_exp,
                              Anchor::absolute)};
    p.xi = [=](double, double b) { return xi_const + xi_slope * b; };
    p.eta = constant_field(xi_slope);
    p.expected = xi_const != 0.0 ? ExpectedBehavior::diverges : ExpectedBehavior::converges;
    p.anchor_index = p.grid.t0_index() + d;
    return p;
}

ProblemSpec g1_demo(const ParamMap& pm) {
    const double T = get(pm, "T", 1.0);
    const double l = get(pm, "l", 0.25);
    const double u = get(pm, "u", 0.25);
    const double c = get(pm, "c", 0.1);
    ProblemSpec p;
    p.name = "g1_demo";
    p.grid = grid_from(pm, 0.0, T, l, u);
    const LagMeasure m1 = point_mass(get(pm, "d1", u), p.grid);
    const LagMeasure m2 = point_mass(get(pm, "d2", -l), p.grid);
    const ScaledLag span = uniform_lag(get(pm, "d3", -l), get(pm, "d4", u), p.grid);
    p.generator.terms = {term(c, m1, Target::y, Wrap::abs_cond_exp), term(c, m2, Target::z, Wrap::cond_exp),
                         term(c * span.scale, span.measure, Target::y, Wrap::cond_exp),
                         term(c * span.scale, span.measure, Target::z, Wrap::cond_exp)};
    const double K = c * (2.0 + span.scale);
    p.generator.lipschitz = {Assumption::A1, K,
                             mix({m1, m2, span.measure}, {c / K, c / K, c * span.scale / K})};
    p.xi = [](double, double b) { return b; };
    p.eta = constant_field(1.0);
    return p;
}

ProblemSpec g2_demo(const ParamMap& pm) {
    const double T = get(pm, "T", 1.0);
    const double l = get(pm, "l", 0.25);
    const double u = get(pm, "u", 0.25);
    const double c = get(pm, "c", 0.1);
    ProblemSpec p;
    p.name = "g2_demo";
    p.grid = grid_from(pm, 0.0, T, l, u);
    const LagMeasure m1 = point_mass(get(pm, "d1", u), p.grid);
    const LagMeasure m2 = point_mass(get(pm, "d2", -l), p.grid);
    const ScaledLag span = absolute_uniform(get(pm, "d3", 0.0), get(pm, "d4", T / 2.0), p.grid);
    p.generator.terms = {term(c, m1, Target::y, Wrap::cond_exp), term(c, m2, Target::z, Wrap::abs_cond_exp),
                         term(c * span.scale, span.measure, Target::y, Wrap::cond_exp, Anchor::absolute),
                         term(c * span.scale, span.measure, Target::z, Wrap::cond_exp, Anchor::absolute)};
    p.generator.lipschitz = {Assumption::A2, 3.0 * c * c * (1.0 + 2.0 * T * span.scale), {}};
    p.xi = [](double, double b) { return b; };
    p.eta = constant_field(1.0);
    return p;
}

ProblemSpec lipschitz_demo(const ParamMap& pm) {
    const double T = get(pm, "T", 1.0);
    const double K = get(pm, "K", 0.5);
    ProblemSpec p;
    p.name = "lipschitz_demo";
    p.grid = grid_from(pm, 0.0, T, get(pm, "l", 0.0), get(pm, "u", 0.0));
    const LagMeasure now = point_mass(0.0, p.grid);
    p.generator.terms = {term(K, now, Target::y), term(-K, now, Target::z)};
    p.generator.lipschitz = {Assumption::A1pp, K, {}};
    p.xi = [](double, double b) { return 1.0 + b; };
    p.eta = constant_field(1.0);
    return p;
}

CoefficientSpec constant_diffusion(double s, const TimeGrid& g) {
    CoefficientSpec d;
    d.kind = CoefficientKind::diffusion;
    d.forcing = constant_field(s);
    d.lipschitz = {Assumption::B1, 0.0, point_mass(0.0, g)};
    return d;
}

ProblemSpec sde_remark4(const ParamMap& pm) {
    const double T = get(pm, "T", 1.0);
    const double K2 = get(pm, "K2", 1.0 / T);
    const double a = get(pm, "a", 1.0);
    ProblemSpec p;
    p.name = "sde_remark4";
    p.kind = ProblemKind::sde;
    p.grid = grid_from(pm, 0.0, T, 0.0, T);
    const LagMeasure ahead = point_mass(T, p.grid);
    p.drift.kind = CoefficientKind::drift;
    p.drift.terms = {term(K2, ahead, Target::x, Wrap::cond_exp)};
    p.drift.lipschitz = {Assumption::B1, K2, ahead};
    p.diffusion = constant_diffusion(K2, p.grid);
    p.theta = constant_field(a);
    p.expected = (std::abs(T * K2 - 1.0) < 1e-12 && a != 0.0) ? ExpectedBehavior::diverges
                                                               : ExpectedBehavior::converges;
    p.anchor_index = p.grid.T_index();
    return p;
}

ProblemSpec example_3_3(const ParamMap& pm) {
    const double t0 = get(pm, "t0", 0.0);
    const double T = get(pm, "T", 1.0);
    const double delta = get(pm, "delta", (t0 + T) / 2.0);
    const double a = get(pm, "a", 1.0);
    if (!(delta > t0 && delta <= T)) throw std::invalid_argument("example_3_3 needs t0 < delta <= T");
    ProblemSpec p;
    p.name = "example_3_3";
    p.kind = ProblemKind::sde;
    p.grid = grid_from(pm, t0, T, get(pm, "l", 0.0), get(pm, "u", 0.0));
    const int d = p.grid.steps_of(delta - t0, "delta");
    p.drift.kind = CoefficientKind::drift;
    p.drift.terms = {term(1.0 / (delta - t0), LagMeasure{{d}, {1.0}}, Target::x, Wrap::cond_exp, Anchor::absolute)};
    p.diffusion = constant_diffusion(1.0, p.grid);
    p.theta = constant_field(a);
    p.expected = a != 0.0 ? ExpectedBehavior::diverges : ExpectedBehavior::converges;
    p.anchor_index = p.grid.t0_index() + d;
    return p;
}

ProblemSpec delayed_sde(const ParamMap& pm, const std::string& prefix = "") {
    const double T = get(pm, "T", 1.0);
    const double l = get(pm, "l", 0.25);
    const double kappa = get(pm, prefix.empty() ? "kappa" : prefix + "kappa", 0.1);
    const double sigma = get(pm, "sigma", 0.2);
    const double theta = get(pm, prefix.empty() ? "theta" : prefix + "theta", 1.0);
    ProblemSpec p;
    p.name = "delayed_sde";
    p.kind = ProblemKind::sde;
    p.grid = grid_from(pm, 0.0, T, l, get(pm, "u", 0.0));
    const LagMeasure back = point_mass(-l, p.grid);
    p.drift.kind = CoefficientKind::drift;
    p.drift.terms = {term(kappa, back, Target::x)};
    p.drift.lipschitz = {Assumption::B1, std::abs(kappa), back};
    p.diffusion = constant_diffusion(sigma, p.grid);
    p.theta = constant_field(theta);
    return p;
}

ProblemSpec anticipated_bsde(const ParamMap& pm, double k, double xi, const std::string& name) {
    const double T = get(pm, "T", 1.0);
    const double steps = get(pm, "steps", 8.0);
    const double delta = get(pm, "delta", T / steps);
    ProblemSpec p;
    p.name = name;
    p.grid = grid_from(pm, 0.0, T, get(pm, "l", 0.0), delta);
    const LagMeasure ahead = point_mass(delta, p.grid);
    p.generator.terms = {term(k, ahead, Target::y, Wrap::cond_exp)};
    p.generator.lipschitz = {Assumption::A1p, std::abs(k), ahead};
    p.xi = constant_field(xi);
    p.eta = constant_field(0.0);
    return p;
}

ProblemSpec comparison_pair(const ParamMap& pm) {
    const bool sde = get(pm, "kind", 0.0) != 0.0;
    ProblemSpec upper;
    std::shared_ptr<ProblemSpec> lower;
    if (sde) {
        upper = delayed_sde(pm, "hi_");
        ParamMap lo = pm;
        lo.try_emplace("lo_kappa", 0.05);
        lo.try_emplace("lo_theta", 0.5);
        lower = std::make_shared<ProblemSpec>(delayed_sde(lo, "lo_"));
    } else {
        upper = anticipated_bsde(pm, get(pm, "k_hi", 0.10), get(pm, "xi_hi", 1.0), "comparison_upper");
        lower = std::make_shared<ProblemSpec>(
            anticipated_bsde(pm, get(pm, "k_lo", 0.05), get(pm, "xi_lo", 0.0), "comparison_lower"));
    }
    finalize(*lower);
    upper.name = "comparison_pair";
    upper.partner = lower;
    return upper;
}

double xi_const_of(const ParamMap& pm) { return get(pm, "xi_const", 0.0); }

ProblemSpec linear_bsde_15(const ParamMap& pm) {
    const double T = get(pm, "T", 1.0);
    const double l = get(pm, "l", 0.0);
    const double u = get(pm, "u", 0.0);
    const double m = std::max(l, u);
    const TimeGrid g = grid_from(pm, 0.0, T, m, m);
    LinearCoefficients k{get(pm, "b", 0.0),     get(pm, "bbar", 0.0),     get(pm, "bund", 0.0),
                         get(pm, "sigma", 0.0), get(pm, "sigmabar", 0.0), get(pm, "sigmaund", 0.0),
                         get(pm, "c", 0.0)};
    const double xc = xi_const_of(pm);
    const double xs = get(pm, "xi_sq", 1.0);
    ProblemSpec p = linear_bsde(k, g, l, u, [=](double t, double b) { return xc + xs * (b * b - t); },
                                [=](double, double b) { return 2.0 * xs * b; });
    p.params = pm;
    return p;
}

ProblemSpec linear_sde_16(const ParamMap& pm) {
    const double T = get(pm, "T", 1.0);
    const double l = get(pm, "l", 0.0);
    const double u = get(pm, "u", 0.0);
    const double m = std::max(l, u);
    const TimeGrid g = grid_from(pm, 0.0, T, m, m);
    LinearCoefficients k{get(pm, "b", 0.0),     get(pm, "bbar", 0.0),     get(pm, "bund", 0.0),
                         get(pm, "sigma", 0.0), get(pm, "sigmabar", 0.0), get(pm, "sigmaund", 0.0),
                         get(pm, "c", 0.0)};
    ProblemSpec p = linear_sde(k, g, l, u, g.index_of(get(pm, "t", 0.0)));
    p.params = pm;
    return p;
}

}  // namespace

ProblemSpec linear_bsde(const LinearCoefficients& k, const TimeGrid& grid, double l, double u, ScalarField xi,
                        ScalarField eta) {
    ProblemSpec p;
    p.name = "linear_bsde_15";
    p.grid = grid;
    const LagMeasure now = point_mass(0.0, grid);
    const LagMeasure back = point_mass(-l, grid);
    const LagMeasure ahead = point_mass(u, grid);
    auto& g = p.generator;
    g.terms = {term(k.b, now, Target::y),
               term(k.b_bar, back, Target::y),
               term(k.b_under, ahead, Target::y, Wrap::cond_exp),
               term(k.sigma, now, Target::z),
               term(k.sigma_bar, back, Target::z),
               term(k.sigma_under, ahead, Target::z, Wrap::cond_exp)};
    g.forcing = constant_field(k.c);
    const double K = 3.0 * std::max({std::abs(k.b) + std::abs(k.sigma), std::abs(k.b_bar) + std::abs(k.sigma_bar),
                                     std::abs(k.b_under) + std::abs(k.sigma_under)});
    g.lipschitz = {Assumption::A1, K, mix({now, back, ahead}, {1.0 / 3, 1.0 / 3, 1.0 / 3})};
    p.xi = std::move(xi);
    p.eta = std::move(eta);
    finalize(p);
    return p;
}

ProblemSpec linear_sde(const LinearCoefficients& k, const TimeGrid& grid, double l, double u, int start) {
    ProblemSpec p;
    p.name = "linear_sde_16";
    p.kind = ProblemKind::sde;
    p.grid = grid;
    p.start_index = start;
    p.extension = Extension::zero;
    const LagMeasure now = point_mass(0.0, grid);
    const LagMeasure back = point_mass(-u, grid);
    const LagMeasure ahead = point_mass(l, grid);
    const LagMeasure lam = mix({now, back, ahead}, {1.0 / 3, 1.0 / 3, 1.0 / 3});
    p.drift.kind = CoefficientKind::drift;
    p.drift.terms = {term(k.b, now, Target::x), term(k.b_under, back, Target::x),
                     term(k.b_bar, ahead, Target::x, Wrap::cond_exp)};
    p.drift.lipschitz = {Assumption::B1, 3.0 * std::max({std::abs(k.b), std::abs(k.b_under), std::abs(k.b_bar)}),
                         lam};
    p.diffusion.kind = CoefficientKind::diffusion;
    p.diffusion.terms = {term(k.sigma, now, Target::x), term(k.sigma_under, back, Target::x),
                         term(k.sigma_bar, ahead, Target::x, Wrap::cond_exp)};
    p.diffusion.lipschitz = {
        Assumption::B1, 3.0 * std::max({std::abs(k.sigma), std::abs(k.sigma_under), std::abs(k.sigma_bar)}), lam};
    const double ts = grid.time_of(start);
    const double half = 0.5 * grid.dt();
    p.theta = [=](double t, double) { return std::abs(t - ts) < half ? 1.0 : 0.0; };
    finalize(p);
    return p;
}

const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names = {
        "bsde_8",      "bsde_9",      "bsde_7",         "example_2_3",   "g1_demo",         "g2_demo",
        "sde_remark4", "example_3_3", "linear_bsde_15", "linear_sde_16", "comparison_pair", "lipschitz_demo",
        "delayed_sde"};
    return names;
}

ProblemSpec builtin_problem(const std::string& name, const ParamMap& params) {
    ProblemSpec p;
    if (name == "bsde_8") p = bsde_8(params);
    else if (name == "bsde_9") p = bsde_9(params);
    else if (name == "bsde_7") p = bsde_7(params);
    else if (name == "example_2_3") p = example_2_3(params);
    else if (name == "g1_demo") p = g1_demo(params);
    else if (name == "g2_demo") p = g2_demo(params);
    else if (name == "sde_remark4") p = sde_remark4(params);
    else if (name == "example_3_3") p = example_3_3(params);
    else if (name == "linear_bsde_15") p = linear_bsde_15(params);
    else if (name == "linear_sde_16") p = linear_sde_16(params);
    else if (name == "comparison_pair") p = comparison_pair(params);
    else if (name == "lipschitz_demo") p = lipschitz_demo(params);
    else if (name == "delayed_sde") p = delayed_sde(params);
    else throw std::invalid_argument("unknown problem '" + name + "'");
    p.params = params;
    finalize(p);
    return p;
}

}  // namespace adbsde
