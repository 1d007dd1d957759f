#pragma once

// The acceptance criteria 1-10 as in-process checks. Criterion 11 (the whole
// suite through the CLI within the time limit) is judged by the caller.

#include <string>
#include <vector>

namespace wfc::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double time_limit = 0.0;  // seconds; 0 when the criterion has none
};

inline constexpr int kCriterionCount = 10;

// Criteria whose failure is understood and written up (finite-size effects);
// reported as FAIL but not fatal to the test run.
bool known_shortfall(int id);

CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_all();

}  // namespace wfc::acceptance
