#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lab::selftest {

struct CriterionResult {
  int number = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

/// Runs the full acceptance suite (the nine release criteria) and returns one
/// result per criterion.
std::vector<CriterionResult> run_all();

/// Runs the suite printing one PASS/FAIL line per criterion; returns 0 when
/// every criterion passes, 1 otherwise.
int run_and_report(std::ostream& out);

}  // namespace lab::selftest
