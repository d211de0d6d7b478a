#pragma once

#include "adbsde/coefficients.hpp"
#include "adbsde/engine.hpp"
#include "adbsde/solve_report.hpp"

#include <utility>

namespace adbsde {

struct SdeSolution {
    NodeProcess X;
};

/// Euler sweep with frozen coefficient processes on [start, T):
/// X = theta up to `start`, X_{k+1} = X_k + b_k dt + sigma_k dB_k, then the
/// problem's extension convention on (T, T + u].
SdeSolution forward_sweep(const Engine& engine, const NodeProcess& b_frozen, const NodeProcess& sigma_frozen,
                          const ProblemSpec& problem);

/// Picard fixed-point solve in the exponentially discounted norm.
std::pair<SdeSolution, SolveReport> solve_sde(const ProblemSpec& problem, const Engine& engine,
                                              const SolverConfig& config = {});

/// Both sides of the discounted energy estimate for a frozen-coefficient solution.
AprioriReport apriori_check_sde(const Engine& engine, const SdeSolution& solution, const NodeProcess& b_frozen,
                                const NodeProcess& sigma_frozen, int start, double beta);

}  // namespace adbsde
