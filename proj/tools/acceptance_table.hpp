#pragma once

#include <string>
#include <utility>
#include <vector>

namespace szeta::cli {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    double seconds = 0.0;
    /// named measurements backing the verdict (worst residuals, timings, slopes)
    std::vector<std::pair<std::string, double>> metrics;
    /// failure details, one line each
    std::vector<std::string> notes;
};

/// Evaluates criterion 1..7 end to end.
CriterionResult run_criterion(int id, int threads = 0);

std::vector<CriterionResult> run_acceptance(int threads = 0);

}  // namespace szeta::cli
