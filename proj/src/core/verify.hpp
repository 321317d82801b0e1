#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pmproc {

struct CheckResult {
  std::string name;
  std::int64_t instances = 0;
  std::int64_t failures = 0;
  /// Most pessimistic margin observed: minimal inequality slack for
  /// inequality checks, maximal residual for identity checks.
  double worst_slack = 0.0;
  /// Report-only curves and context, free-form.
  std::string notes;
};

std::vector<CheckResult> run_frames_campaign(std::uint64_t seed);
std::vector<CheckResult> run_randomization_campaign(std::uint64_t seed);
std::vector<CheckResult> run_inequalities_campaign(std::uint64_t seed);

/// selector in {frames, randomization, inequalities, all}; anything else
/// raises unknown-selector.
std::vector<CheckResult> run_campaign(const std::string& selector,
                                      std::uint64_t seed);

}  // namespace pmproc
