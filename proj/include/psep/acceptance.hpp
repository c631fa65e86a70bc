#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace psep {

enum class Suite { Fast, Full };

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;  // measured values, deterministic given the seed
};

inline constexpr int criterion_count = 12;

/// Criteria run by a suite: fast is the deterministic subset, full adds the
/// Monte Carlo ones.
std::vector<int> suite_criteria(Suite suite);

CriterionResult run_criterion(int id, std::uint64_t seed = 42);

std::vector<CriterionResult> run_acceptance(Suite suite, std::uint64_t seed = 42);

/// "PASS  3 exit-time-variance  ..." per criterion.
std::string format_line(const CriterionResult& r);

}  // namespace psep
