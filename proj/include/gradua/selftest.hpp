#ifndef GRADUA_SELFTEST_HPP
#define GRADUA_SELFTEST_HPP

#include <string>
#include <vector>

namespace gradua {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  long cases = 0;
  std::string detail;  // witness summary when failing, counts when passing
};

// Runs the full acceptance battery with exact arithmetic; the seed drives
// every randomized property. Criteria are numbered stably.
std::vector<CriterionResult> run_selftest(unsigned long seed);

// Seed from the GRADUA_SEED environment variable, or the fixed default.
unsigned long selftest_seed_from_env();

}  // namespace gradua

#endif
