#pragma once

#include <optional>
#include <string>
#include <vector>

namespace adbsde {

enum class InitialGuess { terminal_extension, zero };

/// Picard iteration controls. An unset beta resolves to the contraction
/// checker's beta_star when the declared assumption admits one, else 2.
struct SolverConfig {
    std::optional<double> beta;
    double tol = 1e-10;
    int max_iter = 200;
    InitialGuess initial_guess = InitialGuess::terminal_extension;
    /// Consecutive non-decreasing residuals that trigger the divergence verdict.
    int divergence_window = 5;
};

struct SolveReport {
    bool converged = false;
    int iterations = 0;
    std::vector<double> residuals;  // norm of successive iterate differences
    std::optional<double> gamma_empirical;
    double beta_used = 2.0;
    std::string verdict_detail;  // converged | max_iter_nondecreasing | max_iter_slow
    std::vector<double> anchor_means;  // E[iterate at anchor], one per iteration

    /// Largest ratio of consecutive residuals, skipping the first (warm-up) ratio.
    void finalize_gamma();
};

/// Result of evaluating both sides of an a-priori estimate.
struct AprioriReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;     // rhs - lhs
    double sup_ratio = 0.0;  // monitoring only
};

}  // namespace adbsde
