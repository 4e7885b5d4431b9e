#include <cstdio>
#include <cstdlib>
#include <string>

#include "acceptance_table.hpp"

int main(int argc, char** argv) {
    const bool verbose = argc > 1 && std::string(argv[1]) == "-v";
    int failed = 0;
    for (int id = 1; id <= 7; ++id) {
        const szeta::cli::CriterionResult r = szeta::cli::run_criterion(id);
        std::printf("criterion %d: %s  %s (%.1f s)\n", r.id, r.pass ? "PASS" : "FAIL", r.title.c_str(), r.seconds);
        if (verbose || !r.pass)
            for (const auto& [name, value] : r.metrics) std::printf("    %s: %.6g\n", name.c_str(), value);
        for (const auto& n : r.notes) std::printf("    ! %s\n", n.c_str());
        std::fflush(stdout);
        failed += !r.pass;
    }
    return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
