// Acceptance suite: runs every release criterion and prints one line per
// criterion. Criterion details (sweep sizes, margins, timings) come from the
// selftest engine that also backs `lab selftest`.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>

#include "lab/selftest.hpp"

TEST_CASE("acceptance criteria") {
  const std::vector<lab::selftest::CriterionResult> results = lab::selftest::run_all();
  REQUIRE(results.size() == 9);
  for (const auto& r : results) {
    std::printf("%s criterion %d: %s: %s\n", r.pass ? "[PASS]" : "[FAIL]", r.number,
                r.title.c_str(), r.detail.c_str());
    std::fflush(stdout);
    CAPTURE(r.number);
    CAPTURE(r.detail);
    CHECK(r.pass);
  }
}
