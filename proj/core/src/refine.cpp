#include "stopgame/refine.hpp"

#include <cmath>

#include "stopgame/fixtures.hpp"

namespace stopgame {

RefineKind refine_kind_from_name(const std::string& name) {
  if (name == "abs_time_diff") return RefineKind::kAbsTimeDiff;
  if (name == "w_process") return RefineKind::kWProcess;
  throw ValidationError("refine: unknown payoff kind '" + name + "' (want abs_time_diff or w_process)");
}

const char* refine_kind_name(RefineKind kind) {
  return kind == RefineKind::kAbsTimeDiff ? "abs_time_diff" : "w_process";
}

namespace {

// Exhaustive map enumeration is feasible when the whole function space on M
// stopping times stays under the cap.
bool oracle_feasible(std::size_t st_count, std::size_t map_cap) {
  double total = 1;
  for (std::size_t i = 0; i < st_count; ++i) {
    total *= static_cast<double>(st_count);
    if (total > static_cast<double>(map_cap)) return false;
  }
  return true;
}

template <Scalar T>
void fill_level(RefineLevel& out, const Payoff& payoff, bool rational_mode, std::size_t st_cap,
                std::size_t map_cap) {
  const FilteredSpace& space = payoff.space();
  const StoppingTimeSet set = StoppingTimeSet::enumerate(space, st_cap);

  struct Variant {
    const char* lower;
    const char* upper;
    bool lower_strict;
    bool upper_strict;
  };
  const Variant variants[] = {{"V1", "V2", false, false},
                              {"V1", "V2+", false, true},
                              {"V1+", "V2", true, false},
                              {"V1+", "V2+", true, true}};

  const std::vector<T> lower = value_lower<T>(payoff, false).values;
  const std::vector<T> lower_strict = value_lower<T>(payoff, true).values;
  const std::vector<T> upper = value_upper<T>(payoff, false).values;
  const std::vector<T> upper_strict = value_upper<T>(payoff, true).values;

  auto push_value = [&](std::string quantity, const T& v, bool from_oracle) {
    RefineValue rv;
    rv.quantity = std::move(quantity);
    if constexpr (scalar_exact<T>()) {
      rv.exact = v;
      rv.approx = v.to_double();
    } else {
      rv.approx = v;
    }
    rv.from_oracle = from_oracle;
    out.values.push_back(std::move(rv));
  };

  for (const Variant& var : variants) {
    for (TieRule tie : {TieRule::kLow, TieRule::kHigh}) {
      for (OpenLoopOrder order : {OpenLoopOrder::kInfSup, OpenLoopOrder::kSupInf}) {
        DynkinSpec<T> spec{var.lower_strict ? lower_strict : lower,
                           var.upper_strict ? upper_strict : upper, tie};
        const T value = open_loop_solve(set, spec, order).value;
        push_value(std::string("D:") + var.lower + ":" + var.upper + ":" + tie_rule_name(tie) +
                       ":" + open_loop_order_name(order),
                   value, false);
      }
    }
  }

  out.oracle_computable = oracle_feasible(set.size(), map_cap);
  if (out.oracle_computable) {
    GameValues<T> games = brute_game_values<T>(payoff, st_cap, map_cap);
    push_value("A_upper", games.a_upper, true);
    push_value("A_lower", games.a_lower, true);
    push_value("B_upper", games.b_upper, true);
    push_value("B_lower", games.b_lower, true);
  }

  auto spread_over = [&](bool d_only, Rat& exact, double& approx) {
    bool first = true;
    Rat lo_e, hi_e;
    double lo_f = 0, hi_f = 0;
    for (const RefineValue& v : out.values) {
      if (d_only && v.from_oracle) continue;
      if (first) {
        lo_e = hi_e = v.exact;
        lo_f = hi_f = v.approx;
        first = false;
        continue;
      }
      lo_e = min(lo_e, v.exact);
      hi_e = max(hi_e, v.exact);
      lo_f = std::min(lo_f, v.approx);
      hi_f = std::max(hi_f, v.approx);
    }
    if (rational_mode) exact = hi_e - lo_e;
    approx = hi_f - lo_f;
  };
  spread_over(false, out.spread_exact, out.spread_float);
  spread_over(true, out.d_spread_exact, out.d_spread_float);
}

}  // namespace

RefineStudy refine_study(RefineKind kind, int levels, uint64_t seed, bool rational_mode,
                         std::size_t st_cap, std::size_t map_cap) {
  if (levels < 1) throw ValidationError("refine: levels must be at least 1");
  RefineStudy study;
  study.kind = kind;
  study.seed = seed;
  study.rational_mode = rational_mode;

  for (int level = 1; level <= levels; ++level) {
    RefineLevel row;
    row.level = level;
    std::shared_ptr<const FilteredSpace> space;
    std::shared_ptr<const Payoff> payoff;
    if (kind == RefineKind::kAbsTimeDiff) {
      row.steps = 1 << level;
      space = std::make_shared<const FilteredSpace>(fixtures::chain(row.steps));
      payoff = std::make_shared<const Payoff>(Payoff::abs_time_diff(*space));
    } else {
      row.steps = level + 1;  // binomial depth 2, 3, ...
      space = std::make_shared<const FilteredSpace>(fixtures::binary(row.steps));
      payoff = std::make_shared<const Payoff>(fixtures::seeded_lipschitz_payoff(*space, seed));
    }
    row.delta = Rat(1, row.steps);
    if (rational_mode) {
      fill_level<Rat>(row, *payoff, true, st_cap, map_cap);
    } else {
      fill_level<double>(row, *payoff, false, st_cap, map_cap);
    }
    study.levels.push_back(std::move(row));
  }
  return study;
}

}  // namespace stopgame
