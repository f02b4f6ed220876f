// Runs every acceptance experiment and prints one PASS/FAIL line each.
// Usage: minla_acceptance [--out DIR] [ID...]

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "minla/suite.hpp"

int main(int argc, char** argv) {
    std::string out_dir;
    std::vector<int> only;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--out" && i + 1 < argc) {
            out_dir = argv[++i];
        } else {
            only.push_back(std::atoi(arg.c_str()));
        }
    }

    std::vector<minla::CriterionResult> results;
    bool all = true;
    for (const auto& criterion : minla::acceptance_criteria()) {
        if (!only.empty() && std::find(only.begin(), only.end(), criterion.id) == only.end()) continue;
        results.push_back(minla::run_criterion(criterion));
        all = all && results.back().pass;
        std::cout << minla::format_result(results.back()) << std::endl;
    }
    if (!out_dir.empty()) minla::write_suite_artifacts(out_dir, results);
    std::cout << (all ? "ALL PASS" : "SOME FAILED") << " (" << results.size() << " criteria)" << std::endl;
    return all ? 0 : 1;
}
