#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stopgame/oracle.hpp"

namespace stopgame {

enum class RefineKind { kAbsTimeDiff, kWProcess };

RefineKind refine_kind_from_name(const std::string& name);
const char* refine_kind_name(RefineKind kind);

struct RefineValue {
  std::string quantity;
  Rat exact;        // valid only in rational mode
  double approx;    // always filled (double of the computed value)
  bool from_oracle; // brute game value rather than an open-loop game value
};

struct RefineLevel {
  int level = 0;
  int steps = 0;   // grid intervals (chain) or tree depth (binomial)
  Rat delta;       // grid mesh
  bool oracle_computable = false;  // exhaustive map enumeration feasible
  std::vector<RefineValue> values;
  Rat spread_exact;       // max - min over every computed value
  double spread_float = 0;
  Rat d_spread_exact;     // max - min over the open-loop game values only
  double d_spread_float = 0;
};

struct RefineStudy {
  RefineKind kind = RefineKind::kAbsTimeDiff;
  uint64_t seed = 0;
  bool rational_mode = true;
  std::vector<RefineLevel> levels;
};

/// Grid-halving convergence study. Level k uses the deterministic chain with
/// 2^k intervals (time-difference payoff) or the symmetric binomial tree of
/// depth k+1 with the seeded Lipschitz payoff. Every level reports the
/// open-loop game values of the four family variants under both tie rules and
/// both orders; levels whose strategy-map space fits under `map_cap` also
/// report the four exhaustive game values, otherwise they are labeled
/// bounds-only. Spreads are never extrapolated.
RefineStudy refine_study(RefineKind kind, int levels, uint64_t seed, bool rational_mode,
                         std::size_t st_cap = kDefaultStopTimeCap,
                         std::size_t map_cap = kDefaultMapCap);

}  // namespace stopgame
