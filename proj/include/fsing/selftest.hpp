#ifndef FSING_SELFTEST_HPP
#define FSING_SELFTEST_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace fsing {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  double limit = 0;
};

inline constexpr int kCriteria = 8;

/// One acceptance criterion; passing includes finishing within the limit.
CriterionResult run_criterion(int id, std::uint64_t seed);

std::vector<CriterionResult> run_acceptance(std::uint64_t seed,
                                            const std::function<void(const CriterionResult&)>& done = {});

}  // namespace fsing

#endif
