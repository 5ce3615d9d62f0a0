#include <cstdio>
#include <cstdlib>
#include <string>

#include "randiso/verification.hpp"

// Runs every acceptance criterion and prints one line each.
// Usage: acceptance [seed] [id]
int main(int argc, char **argv)
{
  std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20240601;
  int only = argc > 2 ? std::atoi(argv[2]) : 0;
  int failed = 0;
  for (int id = 1; id <= randiso::criterion_count; ++id) {
    if (only && id != only)
      continue;
    auto r = randiso::run_criterion(id, seed);
    std::printf("%s criterion %d: %s (%zu cases, %.2fs of %.0fs) %s\n", r.passed ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.cases, r.seconds, r.limit_seconds, r.detail.c_str());
    std::fflush(stdout);
    failed += !r.passed;
  }
  return failed == 0 ? 0 : 1;
}
