// Acceptance battery: one line per criterion, nonzero exit on any failure.
#include <cstdio>

#include "gradua/selftest.hpp"

int main() {
  auto results = gradua::run_selftest(gradua::selftest_seed_from_env());
  bool all_pass = true;
  for (const auto& r : results) {
    std::printf("%s  criterion %2d: %s (%ld cases)%s%s\n", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.cases, r.detail.empty() ? "" : " - ", r.detail.c_str());
    all_pass = all_pass && r.pass;
  }
  return all_pass ? 0 : 1;
}
