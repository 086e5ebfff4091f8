#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace fastdiff {

/// Outcome of one acceptance criterion, with the measured numbers that
/// backed the verdict.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double seconds = 0;
  std::vector<std::string> details;
};

/// ids 1..10 with short names; the fixed order of the suite.
std::vector<std::pair<int, std::string>> acceptance_catalog();

/// Runs a single criterion (1..10). The seed feeds the randomized trials
/// (criteria 1 and 8); everything else is deterministic.
CriterionResult run_criterion(int id, std::uint64_t seed);

/// Runs the requested subset in order. Empty `only` means all; `skip` wins
/// over `only`. One "PASS|FAIL cNN name (x.xs): summary" line per criterion
/// is streamed to `log` when non-null.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed,
                                            const std::vector<int>& only,
                                            const std::vector<int>& skip,
                                            std::ostream* log);

/// True when every result passed.
bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace fastdiff
