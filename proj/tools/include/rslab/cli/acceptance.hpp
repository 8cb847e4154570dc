// acceptance.hpp
//
// The thirteen acceptance criteria, with thresholds read from
// configs/acceptance.json. Each criterion reports pass/fail, a one-line
// detail and its wall time.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace rslab::cli {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// Exceptions inside a criterion count as a failure of that criterion only.
std::vector<CriterionResult> run_acceptance(const std::filesystem::path& config, int threads = 1);

// One line per criterion plus a total; returns true when all passed.
bool print_scoreboard(std::ostream& out, const std::vector<CriterionResult>& results);

}  // namespace rslab::cli
