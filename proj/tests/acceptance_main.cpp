#include "adbsde/acceptance.hpp"

#include <iostream>

int main() {
    int failed = 0;
    for (int i = 1; i <= adbsde::kCriterionCount; ++i) {
        const adbsde::CriterionResult r = adbsde::run_criterion(i);
        std::cout << adbsde::format_result(r) << std::endl;
        failed += r.passed ? 0 : 1;
    }
    std::cout << (adbsde::kCriterionCount - failed) << "/" << adbsde::kCriterionCount << " criteria passed"
              << std::endl;
    return failed == 0 ? 0 : 1;
}
