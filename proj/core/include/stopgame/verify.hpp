#pragma once

#include <string>
#include <vector>

#include "stopgame/fixtures.hpp"

namespace stopgame {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Full invariant battery on one instance, exact arithmetic: structural space
/// properties, family sandwich and splitting, Dynkin open/closed consistency
/// and tie monotonicity, saddle scan, the J/J' cross-check, construction
/// validity over every anchor, and the sandwich suite. Checks whose
/// enumeration would exceed the caps are labeled skipped rather than run on a
/// sample.
std::vector<CheckResult> verify_instance(const fixtures::Instance& instance,
                                         std::size_t st_cap = kDefaultStopTimeCap,
                                         std::size_t map_cap = kDefaultMapCap);

/// The built-in battery: the standard fixtures plus twenty seeded depth-one
/// table payoffs. Instance-level work is spread across STOPGAME_THREADS
/// workers; results merge in instance order.
std::vector<CheckResult> builtin_verification_battery(std::size_t st_cap = kDefaultStopTimeCap,
                                                      std::size_t map_cap = kDefaultMapCap);

int count_failures(const std::vector<CheckResult>& checks);

/// Worker count: STOPGAME_THREADS when set and positive, else 1.
int configured_thread_count();

}  // namespace stopgame
