#pragma once

#include <string>
#include <vector>

namespace adbsde {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

constexpr int kCriterionCount = 11;

/// Runs one acceptance criterion (1-based).
CriterionResult run_criterion(int id);

std::vector<CriterionResult> run_acceptance();

/// "[PASS] 3 title: detail (0.12 s)"
std::string format_result(const CriterionResult& r);

}  // namespace adbsde
