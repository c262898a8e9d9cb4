#ifndef PPSPEC_ACCEPTANCE_HPP
#define PPSPEC_ACCEPTANCE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace ppspec {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    /// Measured quantities and the tolerances they were held to.
    std::string detail;
    double seconds = 0.0;
    /// Wall-clock budget; 0 means none.
    double time_limit = 0.0;
};

struct AcceptanceOptions {
    /// Smaller sample counts; the pinned tolerances stay the same.
    bool fast = false;
    std::uint64_t seed = 20240601;
};

/// Criteria of a suite: "lattice", "fibonacci", "controls" or "all".
/// Throws std::invalid_argument for an unknown suite.
std::vector<int> suite_criteria(const std::string& suite);

/// Runs one criterion (1..10). Exceptions inside a check are reported as a
/// failing row, not propagated.
CriterionResult run_criterion(int id, const AcceptanceOptions& opts = {});

std::vector<CriterionResult> run_suite(const std::string& suite, const AcceptanceOptions& opts = {});

/// One line per criterion: "[PASS] 3 title (1.2 s): detail".
std::string format_result(const CriterionResult& r);

bool all_passed(const std::vector<CriterionResult>& results);

} // namespace ppspec

#endif
