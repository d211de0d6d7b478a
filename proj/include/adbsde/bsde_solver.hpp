#pragma once

#include "adbsde/coefficients.hpp"
#include "adbsde/engine.hpp"
#include "adbsde/solve_report.hpp"

#include <optional>
#include <utility>

namespace adbsde {

struct BsdeSolution {
    NodeProcess Y;
    NodeProcess Z;
    double Y0 = 0.0;
};

/// Solves the BSDE with a frozen generator process g on [t0, T):
/// Y_k = E[Y_{k+1} | F_k] + g_k dt, Z_k from the martingale representation,
/// (Y, Z) = (xi, eta) on [T, T + u] and (Y0, 0) before t0.
BsdeSolution backward_sweep(const Engine& engine, const NodeProcess& g_frozen, const ScalarField& xi,
                            const ScalarField& eta);

/// Evaluates the generator on a frozen pair for every index of the solve window.
NodeProcess freeze_generator(const CoefficientSpec& generator, const Engine& engine, const NodeProcess& y,
                             const NodeProcess& z);

/// Picard fixed-point solve. When `frozen_y` is given, the generator reads its
/// y-arguments from it instead of the iterate (used by the comparison harness).
std::pair<BsdeSolution, SolveReport> solve_bsde(const ProblemSpec& problem, const Engine& engine,
                                                const SolverConfig& config = {},
                                                const NodeProcess* frozen_y = nullptr);

/// Both sides of the weighted energy estimate for a frozen-generator solution.
AprioriReport apriori_check(const Engine& engine, const BsdeSolution& solution, const NodeProcess& g_frozen,
                            double beta);

/// beta used when the config leaves it unset.
double default_beta(const ProblemSpec& problem);

}  // namespace adbsde
