#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dirac_noise::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

// Runs every acceptance criterion, printing one PASS/FAIL line per criterion to log.
std::vector<CriterionResult> run_all(std::ostream& log);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace dirac_noise::acceptance
