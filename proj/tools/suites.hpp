#pragma once

#include <string>
#include <utility>
#include <vector>

#include "spectral_zeta/sumrules.hpp"

namespace szeta::cli {

/// One verification run over a list of (sigma, lambda) points.
struct SuiteConfig {
    std::string suite;
    std::vector<std::pair<double, double>> points;
    std::vector<int> orders = {1, 2, 3};
    std::vector<int> K = {1, 2, 3};
    std::vector<double> alphas = {0.3, 0.9};
    /// "closed-form": Z(1), Z(2) from the Gamma/pFq forms and, where an order-3
    /// value is needed, Z(3) from 60-level spectra. "eigsum": everything from spectra.
    std::string source = "closed-form";
    double tol = 1e-7;
    int levels = 60;
    int threads = 0;
};

const std::vector<std::string>& suite_names();

/// Ten admissible (sigma, lambda) points away from Gamma poles and singular coefficients.
std::vector<std::pair<double, double>> default_grid();

/// Runs the suite; the reports come back in a fixed order (points first, then
/// the point-independent checks of the suite).
std::vector<SumRuleReport> run_suite(const SuiteConfig& cfg);

/// Z_-(3) of the cubic oscillator (lambda = 1/2) from its Gamma/4F3 expression.
double cubic_zminus3_4f3();

/// The same value from the order-3 radial rule, whose Z_+(3) coefficient
/// vanishes at sigma = 2/5, lambda = 1/2; compared with cubic_zminus3_4f3.
SumRuleReport cubic_zminus3_residual(double tol);

}  // namespace szeta::cli
