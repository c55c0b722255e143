// Runs every acceptance criterion and prints one line per result. The exit
// code is the number of failed criteria.

#include <cstdio>

#include "sepcay/suite.hpp"

int main() {
  int failures = 0;
  for (const sepcay::CriterionResult& r : sepcay::run_all_criteria()) {
    std::printf("[%s] %d %s (%.0f ms) %s\n", r.passed ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.ms, r.detail.c_str());
    std::fflush(stdout);
    if (!r.passed) ++failures;
  }
  return failures;
}
