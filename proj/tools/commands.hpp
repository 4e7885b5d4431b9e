#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "json_out.hpp"

namespace szeta::cli {

enum ExitCode { kSuccess = 0, kVerificationFailure = 1, kConfigError = 2, kNumericalFailure = 3 };

/// Everything a subcommand needs. The same keys are accepted on the command
/// line and in a JSON config file.
struct RunConfig {
    std::string command;

    // problem
    double M = 2.0;
    double alpha = 0.0;
    double lambda = 0.5;
    int K = 0;  // 0: radial problem, >= 1: PT problem C_K
    std::string branch = "minus";

    // eig / zeta
    int count = 60;
    std::vector<int> orders;  // empty: zeta uses {1}, verify uses {1, 2, 3}
    std::string method;  // eig: shooting | collocation; zeta: closed-form | eigsum | both
    double solver_tol = 1e-12;

    // verify
    std::string suite;
    std::string source = "closed-form";
    std::vector<double> sigmas;
    std::vector<double> lambdas;
    std::vector<double> alphas = {0.3, 0.9};
    std::vector<int> Ks = {1, 2, 3};
    double tol = 1e-7;

    // report
    std::vector<int> criteria = {1, 2, 3, 4, 5, 6, 7};
    std::string plot;  // prefix for the plot-data files

    // output
    std::string format = "json";
    std::string output;
    int threads = 0;
};

/// Result of one command: the canonical JSON document, its CSV projection
/// and any side files (path, content) such as plot data.
struct CommandOutput {
    int exit_code = kSuccess;
    Json doc;
    std::string csv;
    std::vector<std::pair<std::string, std::string>> files;
    std::vector<std::string> log;  // progress lines for standard error
};

CommandOutput cmd_eig(const RunConfig& cfg);
CommandOutput cmd_zeta(const RunConfig& cfg);
CommandOutput cmd_verify(const RunConfig& cfg);
CommandOutput cmd_report(const RunConfig& cfg);

/// Parses the arguments (args[0] is the program name), runs the command and
/// writes its output. Diagnostics go to `err` as a JSON object.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace szeta::cli
