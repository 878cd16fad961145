#include "stopgame/strategies.hpp"

#include <algorithm>

namespace stopgame {

const char* na_type_name(NaType type) { return type == NaType::kTypeI ? "I" : "II"; }

StrategyMap StrategyMap::from_table(const StoppingTimeSet& set, std::vector<std::size_t> table) {
  if (table.size() != set.size()) {
    throw ValidationError("strategy map: table must be total over the enumeration (" +
                          std::to_string(table.size()) + " of " + std::to_string(set.size()) +
                          " entries)");
  }
  for (std::size_t out : table) {
    if (out >= set.size()) throw ValidationError("strategy map: table output out of range");
  }
  StrategyMap map;
  map.set_ = &set;
  map.table_ = std::move(table);
  map.label_ = "table";
  return map;
}

StrategyMap StrategyMap::from_rule(StoppingTime anchor, InnerRule inner, bool strict_inner,
                                   std::string label) {
  StrategyMap map;
  map.anchor_ = std::move(anchor);
  map.inner_ = std::move(inner);
  map.strict_inner_ = strict_inner;
  map.label_ = std::move(label);
  return map;
}

StoppingTime StrategyMap::apply(const StoppingTime& arg) const {
  if (set_ != nullptr) {
    auto idx = set_->index_of(arg);
    if (!idx.has_value()) {
      throw ValidationError("strategy map: argument outside the enumeration domain");
    }
    return (*set_)[table_[*idx]];
  }
  {
    std::lock_guard<std::mutex> lock(memo_->mutex);
    auto it = memo_->cache.find(arg);
    if (it != memo_->cache.end()) return it->second;
  }
  const FilteredSpace& space = arg.space();
  const StoppingTime& anchor = *anchor_;
  const StoppingTime inner = inner_(arg);
  std::vector<int> depths(static_cast<std::size_t>(space.leaf_count()));
  for (int ord = 0; ord < space.leaf_count(); ++ord) {
    depths[static_cast<std::size_t>(ord)] = arg.value_index(ord) >= anchor.value_index(ord)
                                                ? anchor.value_index(ord)
                                                : inner.value_index(ord);
  }
  StoppingTime out = StoppingTime::from_leaf_depths(space, depths);
  {
    std::lock_guard<std::mutex> lock(memo_->mutex);
    memo_->cache.emplace(arg, out);
  }
  return out;
}

namespace {

// The dichotomy at one leaf. Type I: equal-and-<= or both->. Type II:
// equal-and-< or both->=.
bool na_clause_holds(NaType type, int out1, int out2, int arg_min) {
  const int out_min = std::min(out1, out2);
  if (type == NaType::kTypeI) {
    return (out1 == out2 && out1 <= arg_min) || out_min > arg_min;
  }
  return (out1 == out2 && out1 < arg_min) || out_min >= arg_min;
}

}  // namespace

std::optional<NaCounterexample> check_nonanticipativity(const StoppingTimeSet& set,
                                                        StrategyMap& map, NaType type) {
  const FilteredSpace& space = set.space();
  std::vector<StoppingTime> outputs;
  outputs.reserve(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) outputs.push_back(map.apply(set[i]));

  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      for (int ord = 0; ord < space.leaf_count(); ++ord) {
        const int out1 = outputs[i].value_index(ord);
        const int out2 = outputs[j].value_index(ord);
        const int arg_min = std::min(set[i].value_index(ord), set[j].value_index(ord));
        if (!na_clause_holds(type, out1, out2, arg_min)) {
          NaCounterexample cex;
          cex.sigma1_index = i;
          cex.sigma2_index = j;
          cex.leaf_ordinal = ord;
          cex.out1 = out1;
          cex.out2 = out2;
          cex.arg_min = arg_min;
          const bool strict_type = type == NaType::kTypeI;
          const bool equal_clause =
              out1 == out2 && (strict_type ? out1 <= arg_min : out1 < arg_min);
          const bool later_clause =
              strict_type ? std::min(out1, out2) > arg_min : std::min(out1, out2) >= arg_min;
          std::string path;
          const int leaf = space.leaf_node(ord);
          for (int d = 0; d <= space.depth(leaf); ++d) {
            path += (d == 0 ? "" : ">") + std::to_string(space.ancestor_at(leaf, d));
          }
          cex.detail = "type " + std::string(na_type_name(type)) + " fails at leaf " +
                       std::to_string(ord) + " (path " + path + "): outputs (" +
                       std::to_string(out1) + "," + std::to_string(out2) +
                       ") vs argument minimum " + std::to_string(arg_min) +
                       "; equal-and-early clause " + (equal_clause ? "holds" : "fails") +
                       ", both-later clause " + (later_clause ? "holds" : "fails");
          return cex;
        }
      }
    }
  }
  map.declare_type(type);
  return std::nullopt;
}

std::optional<FixedPointViolation> fixed_point_check(const StoppingTimeSet& set,
                                                     const StrategyMap& map) {
  const FilteredSpace& space = set.space();
  const StoppingTime horizon = StoppingTime::constant(space, space.horizon_index());
  const StoppingTime once = map.apply(horizon);
  const StoppingTime twice = map.apply(once);
  for (int ord = 0; ord < space.leaf_count(); ++ord) {
    if (once.value_index(ord) != twice.value_index(ord)) {
      return FixedPointViolation{ord, once.value_index(ord), twice.value_index(ord)};
    }
  }
  return std::nullopt;
}

template <Scalar T>
StrategyMap build_rho_map(const Payoff& payoff, const StoppingTime& anchor, bool strict_inner,
                          const T& epsilon) {
  const Payoff* p = &payoff;
  StrategyMap::InnerRule rule = [p, strict_inner, epsilon](const StoppingTime& arg) {
    return inner_optimizer<T>(*p, FamilySide::kLower, strict_inner, arg, epsilon);
  };
  return StrategyMap::from_rule(anchor, std::move(rule), strict_inner,
                                strict_inner ? "rho_rule_strict" : "rho_rule");
}

template <Scalar T>
StrategyMap build_tau_map(const Payoff& payoff, const StoppingTime& anchor, bool strict_inner,
                          const T& epsilon) {
  const Payoff* p = &payoff;
  StrategyMap::InnerRule rule = [p, strict_inner, epsilon](const StoppingTime& arg) {
    return inner_optimizer<T>(*p, FamilySide::kUpper, strict_inner, arg, epsilon);
  };
  return StrategyMap::from_rule(anchor, std::move(rule), strict_inner,
                                strict_inner ? "tau_rule_strict" : "tau_rule");
}

template <Scalar T>
T strategy_game_value(const Payoff& payoff, const StrategyMap& map, MapRole role,
                      const StoppingTimeSet& set, GameValueWitness* witness) {
  const FilteredSpace& space = payoff.space();
  bool first = true;
  T best = scalar_cast<T>(Rat(0));
  std::size_t best_index = 0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    const StoppingTime mapped = map.apply(set[i]);
    const std::vector<T> leafwise = role == MapRole::kRho
                                        ? eval_payoff<T>(payoff, mapped, set[i])
                                        : eval_payoff<T>(payoff, set[i], mapped);
    const T value = expectation<T>(space, leafwise);
    const bool better = role == MapRole::kRho ? best < value : value < best;
    if (first || better) {
      best = value;
      best_index = i;
      first = false;
    }
  }
  if (witness != nullptr) witness->stopping_time_index = best_index;
  return best;
}

template <Scalar T>
BestResponse<T> best_response_to_map(const Payoff& payoff, const StrategyMap& map,
                                     std::optional<StoppingTime> anchor, std::size_t st_cap) {
  const FilteredSpace& space = payoff.space();
  StoppingTime tau_hat = [&]() {
    if (anchor.has_value()) return *anchor;
    // Default anchor: sup-inf optimizer of the game paying the non-strict
    // lower family against the strict upper family, ties low.
    StoppingTimeSet set = StoppingTimeSet::enumerate(space, st_cap);
    DynkinSpec<T> spec{value_lower<T>(payoff, false).values, value_upper<T>(payoff, true).values,
                       TieRule::kLow};
    OpenLoopResult<T> res = open_loop_solve(set, spec, OpenLoopOrder::kSupInf);
    return set[res.outer_witness];
  }();

  const StoppingTime mapped_anchor = map.apply(tau_hat);
  const StoppingTime upper_opt =
      inner_optimizer<T>(payoff, FamilySide::kUpper, /*strict=*/true, mapped_anchor);

  std::vector<int> depths(static_cast<std::size_t>(space.leaf_count()));
  for (int ord = 0; ord < space.leaf_count(); ++ord) {
    depths[static_cast<std::size_t>(ord)] = tau_hat.value_index(ord) <= mapped_anchor.value_index(ord)
                                                ? tau_hat.value_index(ord)
                                                : upper_opt.value_index(ord);
  }
  StoppingTime response = StoppingTime::from_leaf_depths(space, depths);

  // Case identities from the dichotomy; a violation means the map is not of
  // type II.
  const StoppingTime mapped_response = map.apply(response);
  for (int ord = 0; ord < space.leaf_count(); ++ord) {
    const int th = tau_hat.value_index(ord);
    const int ma = mapped_anchor.value_index(ord);
    if (th <= ma) {
      if (mapped_response.value_index(ord) < th || response.value_index(ord) != th) {
        throw std::logic_error("best_response_to_map: case identity fails at leaf " +
                               std::to_string(ord) + " (anchor not beaten, map moved)");
      }
    } else {
      if (mapped_response.value_index(ord) != ma) {
        throw std::logic_error("best_response_to_map: case identity fails at leaf " +
                               std::to_string(ord) + " (map changed after the anchor was beaten)");
      }
    }
  }

  const T value = expectation<T>(space, eval_payoff<T>(payoff, mapped_response, response));
  return BestResponse<T>{std::move(response), value, std::move(tau_hat)};
}

template StrategyMap build_rho_map<Rat>(const Payoff&, const StoppingTime&, bool, const Rat&);
template StrategyMap build_rho_map<double>(const Payoff&, const StoppingTime&, bool, const double&);
template StrategyMap build_tau_map<Rat>(const Payoff&, const StoppingTime&, bool, const Rat&);
template StrategyMap build_tau_map<double>(const Payoff&, const StoppingTime&, bool, const double&);
template Rat strategy_game_value<Rat>(const Payoff&, const StrategyMap&, MapRole,
                                      const StoppingTimeSet&, GameValueWitness*);
template double strategy_game_value<double>(const Payoff&, const StrategyMap&, MapRole,
                                            const StoppingTimeSet&, GameValueWitness*);
template BestResponse<Rat> best_response_to_map<Rat>(const Payoff&, const StrategyMap&,
                                                     std::optional<StoppingTime>, std::size_t);
template BestResponse<double> best_response_to_map<double>(const Payoff&, const StrategyMap&,
                                                           std::optional<StoppingTime>,
                                                           std::size_t);

}  // namespace stopgame
