#pragma once

// The acceptance suite: ten end-to-end criteria, each reported as a single
// pass/fail line with its runtime against a pinned budget.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace amalg::acceptance {

enum class Level { quick, full };

struct Result {
  int id = 0;
  std::string title;
  bool pass = false;
  double seconds = 0;
  double budget = 0;  ///< seconds; 0 means no budget
  std::string detail;
};

/// Runs every criterion in order; `progress` sees each result as it lands.
std::vector<Result> run_all(Level level, std::uint64_t seed,
                            const std::function<void(const Result&)>& progress = {});

/// "PASS  1 oracle equivalence (3.21 s, budget 120 s): ..."
std::string format(const Result& r);

}  // namespace amalg::acceptance
