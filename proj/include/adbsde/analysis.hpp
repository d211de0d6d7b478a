#pragma once

#include "adbsde/bsde_solver.hpp"
#include "adbsde/coefficients.hpp"
#include "adbsde/engine.hpp"
#include "adbsde/sde_solver.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace adbsde {

// ---- contraction conditions -------------------------------------------------

enum class Condition { thm_2_2_i, thm_2_2_ii, thm_3_2_i, thm_3_2_ii, prop_2_5, prop_2_6, prop_3_4, prop_3_5 };

const char* to_string(Condition c);
Condition parse_condition(const std::string& id);
const std::vector<Condition>& all_conditions();

/// Constant names: K, K1, K2, K3, Kp (alias "K'"), l, u, T, t0.
using ConstantMap = std::map<std::string, double>;

/// Symbols a condition reads; check_contraction rejects a map missing any.
std::vector<std::string> required_constants(Condition c);

/// Left-hand side of the condition at beta.
double contraction_value(Condition c, const ConstantMap& constants, double beta);
/// Right-hand side the value is compared against (1, or 1/3 for prop_2_6).
double contraction_threshold(Condition c);
double beta_min(Condition c);

struct ScanOptions {
    int points = 10000;
    double beta_max = 50.0;
    double refine_tol = 1e-10;
};

struct FeasibilityReport {
    Condition condition = Condition::thm_2_2_i;
    bool feasible = false;
    double beta_star = 0.0;
    double value = 0.0;  // value function at beta_star
    double gamma = 0.0;  // value / threshold
    std::vector<std::pair<double, double>> scan;
};

FeasibilityReport check_contraction(Condition c, const ConstantMap& constants, const ScanOptions& opts = {});

// ---- comparison ---------------------------------------------------------------

struct ComparisonReport {
    bool hypotheses_passed = false;
    std::string failed_hypothesis;
    double min_difference = 0.0;  // min over nodes of (upper - lower)
    bool chain_monotone = false;
    int chain_length = 0;
    double chain_worst_increase = 0.0;
};

/// Orders the solutions of `upper` and `lower` (both BSDEs or both SDEs).
ComparisonReport run_comparison(const ProblemSpec& upper, const ProblemSpec& lower, const Engine& engine,
                                const SolverConfig& config = {}, int probe_count = 20, std::uint64_t seed = 7);

// ---- continuous dependence ------------------------------------------------

struct DependenceRow {
    double eps = 0.0;
    double distance = 0.0;  // sup |dY|^2 + E sum dt (|dY|^2 + |dZ|^2)
    double ratio = 0.0;     // distance / eps^2
    double sup_diff = 0.0;  // sup over nodes of |dY|
};

struct DependenceReport {
    std::vector<DependenceRow> rows;
    bool bounded = false;         // ratio non-increasing within 20% as eps decreases
    bool linear_scaling = false;  // halving eps halves sup |dY| within 5%
};

/// Adds the constant eps to the generator (BSDE) or drift (SDE) and measures the response.
DependenceReport continuous_dependence_probe(const ProblemSpec& base, const std::vector<double>& eps,
                                             const Engine& engine, const SolverConfig& config = {});

// ---- duality --------------------------------------------------------------------

struct DualityReport {
    double lhs = 0.0;  // Y at the first requested time (root mean)
    double rhs = 0.0;
    std::optional<double> closed_y0;
    double denominator = 0.0;
    bool denominator_safe = false;
    std::vector<double> times;
    std::vector<double> gaps;  // max over nodes of |Y_t - representation_t|
};

/// Grid shared by the linear BSDE and its adjoint SDE: spans max(l, u) on both sides.
TimeGrid duality_grid(double T, double l, double u, int steps);

DualityReport verify_duality(const LinearCoefficients& k, double l, double u, const ScalarField& xi,
                             const ScalarField& eta, const std::vector<double>& t_list, const Engine& engine,
                             const SolverConfig& config = {});

}  // namespace adbsde
