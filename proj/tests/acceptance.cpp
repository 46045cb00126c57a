// Acceptance runner: one line per criterion, nonzero exit if any fails.
#include <cstdio>
#include <cstdlib>
#include <string>

#include "fsing/commands.hpp"
#include "fsing/selftest.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = fsing::cli::kDefaultSeed;
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--seed" && i + 1 < argc) seed = std::strtoull(argv[++i], nullptr, 10);
    else if (a == "--only" && i + 1 < argc) only = std::atoi(argv[++i]);
  }
  int failed = 0;
  auto report = [&](const fsing::CriterionResult& c) {
    std::printf("criterion %d: %s  %s  (%.1fs of %.0fs)  %s\n", c.id, c.passed ? "PASS" : "FAIL", c.name.c_str(),
                c.seconds, c.limit, c.detail.c_str());
    std::fflush(stdout);
    if (!c.passed) ++failed;
  };
  if (only) report(fsing::run_criterion(only, seed));
  else fsing::run_acceptance(seed, report);
  return failed ? 1 : 0;
}
