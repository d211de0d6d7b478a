#include "adbsde/analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace adbsde {

const char* to_string(Condition c) {
    switch (c) {
        case Condition::thm_2_2_i: return "thm_2_2_i";
        case Condition::thm_2_2_ii: return "thm_2_2_ii";
        case Condition::thm_3_2_i: return "thm_3_2_i";
        case Condition::thm_3_2_ii: return "thm_3_2_ii";
        case Condition::prop_2_5: return "prop_2_5";
        case Condition::prop_2_6: return "prop_2_6";
        case Condition::prop_3_4: return "prop_3_4";
        case Condition::prop_3_5: return "prop_3_5";
    }
    return "?";
}

const std::vector<Condition>& all_conditions() {
    static const std::vector<Condition> all = {Condition::thm_2_2_i, Condition::thm_2_2_ii, Condition::thm_3_2_i,
                                               Condition::thm_3_2_ii, Condition::prop_2_5,  Condition::prop_2_6,
                                               Condition::prop_3_4,   Condition::prop_3_5};
    return all;
}

Condition parse_condition(const std::string& id) {
    for (Condition c : all_conditions()) {
        if (id == to_string(c)) return c;
    }
    throw std::invalid_argument("unknown condition '" + id + "'");
}

std::vector<std::string> required_constants(Condition c) {
    switch (c) {
        case Condition::thm_2_2_i:
        case Condition::prop_2_5: return {"K", "l"};
        case Condition::thm_2_2_ii: return {"K1", "T", "l"};
        case Condition::thm_3_2_i:
        case Condition::prop_3_4:
        case Condition::prop_3_5: return {"K2", "u"};
        case Condition::thm_3_2_ii: return {"K3", "T", "u", "t0"};
        case Condition::prop_2_6: return {"Kp", "l"};
    }
    return {};
}

double beta_min(Condition c) {
    switch (c) {
        case Condition::thm_2_2_i:
        case Condition::thm_2_2_ii:
        case Condition::prop_2_5:
        case Condition::prop_2_6: return 2.0;
        default: return 1e-6;
    }
}

double contraction_threshold(Condition c) { return c == Condition::prop_2_6 ? 1.0 / 3.0 : 1.0; }

namespace {

double get(const ConstantMap& m, const std::string& key) {
    auto it = m.find(key);
    if (it == m.end() && key == "Kp") it = m.find("K'");
    if (it == m.end()) throw std::invalid_argument("missing constant '" + key + "'");
    if (!(it->second >= 0.0)) throw std::invalid_argument("constant '" + key + "' must be non-negative");
    return it->second;
}

// Coefficient a of the exponent in e^{beta a}.
double exponent(Condition c, const ConstantMap& m) {
    switch (c) {
        case Condition::thm_2_2_i:
        case Condition::prop_2_5:
        case Condition::prop_2_6: return get(m, "l");
        case Condition::thm_2_2_ii: return get(m, "T") + get(m, "l");
        case Condition::thm_3_2_i:
        case Condition::prop_3_4:
        case Condition::prop_3_5: return get(m, "u");
        case Condition::thm_3_2_ii: return get(m, "T") + get(m, "u") - get(m, "t0");
    }
    return 0.0;
}

bool accepts(Condition c, double gamma) { return c == Condition::prop_2_5 ? gamma <= 1.0 : gamma < 1.0; }

}  // namespace

double contraction_value(Condition c, const ConstantMap& m, double beta) {
    for (const auto& key : required_constants(c)) get(m, key);
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
    const double e = std::exp(beta * exponent(c, m));
    switch (c) {
        case Condition::thm_2_2_i: {
            const double K = get(m, "K");
            return 4.0 * K * K * e / beta;
        }
        case Condition::thm_2_2_ii: return 2.0 * get(m, "K1") * e / beta;
        case Condition::thm_3_2_i: {
            const double K = get(m, "K2");
            return 4.0 * K * K * e / beta * (1.0 + 2.0 / beta);
        }
        case Condition::thm_3_2_ii: return 2.0 * get(m, "K3") * e / beta * (1.0 + 2.0 / beta);
        case Condition::prop_2_5: {
            const double K = get(m, "K");
            return 8.0 * K * K * e / beta;
        }
        case Condition::prop_2_6: {
            const double K = get(m, "Kp");
            return 4.0 * K * K * e / beta;
        }
        case Condition::prop_3_4: {
            const double K = get(m, "K2");
            return 8.0 * K * K * e / beta * (1.0 + 2.0 / beta);
        }
        case Condition::prop_3_5: {
            const double K = get(m, "K2");
            return 4.0 * K * K * e / (beta * beta);
        }
    }
    return 0.0;
}

FeasibilityReport check_contraction(Condition c, const ConstantMap& constants, const ScanOptions& opts) {
    if (opts.points < 2) throw std::invalid_argument("scan needs at least 2 points");
    const double lo = beta_min(c);
    const double hi = opts.beta_max;
    if (!(hi > lo)) throw std::invalid_argument("beta_max must exceed the condition's minimum beta");
    auto f = [&](double b) { return contraction_value(c, constants, b); };

    FeasibilityReport rep;
    rep.condition = c;
    rep.scan.reserve(static_cast<std::size_t>(opts.points));
    const double step = std::log(hi / lo) / (opts.points - 1);
    double best_b = lo;
    double best_v = std::numeric_limits<double>::infinity();
    int best_i = 0;
    for (int i = 0; i < opts.points; ++i) {
        const double b = lo * std::exp(step * i);
        const double v = f(b);
        rep.scan.emplace_back(b, v);
        if (v < best_v) {
            best_v = v;
            best_b = b;
            best_i = i;
        }
    }

    if (exponent(c, constants) == 0.0) {
        // Value decreases in beta without bound below: the infimum is 0 as beta grows.
        rep.beta_star = hi;
        rep.value = f(hi);
    } else {
        // Golden-section on the bracket around the best scan point (the value is unimodal in beta).
        double a = lo * std::exp(step * std::max(best_i - 1, 0));
        double b = lo * std::exp(step * std::min(best_i + 1, opts.points - 1));
        const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = b - phi * (b - a);
        double x2 = a + phi * (b - a);
        double f1 = f(x1), f2 = f(x2);
        while (b - a > opts.refine_tol) {
            if (f1 < f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - phi * (b - a);
                f1 = f(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + phi * (b - a);
                f2 = f(x2);
            }
        }
        const double mid = 0.5 * (a + b);
        rep.beta_star = best_b;
        rep.value = best_v;
        if (f(mid) < best_v) {
            rep.beta_star = mid;
            rep.value = f(mid);
        }
    }
    rep.gamma = rep.value / contraction_threshold(c);
    rep.feasible = accepts(c, rep.gamma) && rep.beta_star >= lo;
    return rep;
}

}  // namespace adbsde
