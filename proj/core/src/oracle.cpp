#include "stopgame/oracle.hpp"

#include <algorithm>

namespace stopgame {

namespace {

// Pairwise condition between two decided assignments, pathwise over leaves.
bool pair_ok(const StoppingTimeSet& set, NaType type, std::size_t in1, std::size_t out1,
             std::size_t in2, std::size_t out2) {
  const FilteredSpace& space = set.space();
  const StoppingTime& s1 = set[in1];
  const StoppingTime& s2 = set[in2];
  const StoppingTime& o1 = set[out1];
  const StoppingTime& o2 = set[out2];
  for (int ord = 0; ord < space.leaf_count(); ++ord) {
    const int a = o1.value_index(ord);
    const int b = o2.value_index(ord);
    const int m = std::min(s1.value_index(ord), s2.value_index(ord));
    const int out_min = std::min(a, b);
    const bool ok = type == NaType::kTypeI ? ((a == b && a <= m) || out_min > m)
                                           : ((a == b && a < m) || out_min >= m);
    if (!ok) return false;
  }
  return true;
}

struct MapDfs {
  const StoppingTimeSet& set;
  NaType type;
  const std::function<void(const StrategyMap&)>& visit;
  std::size_t map_cap;
  std::vector<std::size_t> table;
  std::size_t emitted = 0;

  void run(std::size_t next) {
    if (next == set.size()) {
      if (++emitted > map_cap) {
        throw CapacityError("strategy-map enumeration exceeds the cap of " +
                                std::to_string(map_cap),
                            map_cap);
      }
      StrategyMap map = StrategyMap::from_table(set, table);
      map.declare_type(type);
      visit(map);
      return;
    }
    for (std::size_t out = 0; out < set.size(); ++out) {
      bool ok = true;
      for (std::size_t prev = 0; prev < next && ok; ++prev) {
        ok = pair_ok(set, type, prev, table[prev], next, out);
      }
      if (!ok) continue;
      table.push_back(out);
      run(next + 1);
      table.pop_back();
    }
  }
};

}  // namespace

void enumerate_strategy_maps(const StoppingTimeSet& set, NaType type,
                             const std::function<void(const StrategyMap&)>& visit,
                             std::size_t map_cap) {
  MapDfs dfs{set, type, visit, map_cap, {}, 0};
  dfs.table.reserve(set.size());
  dfs.run(0);
}

std::vector<StrategyMap> collect_strategy_maps(const StoppingTimeSet& set, NaType type,
                                               std::size_t map_cap) {
  std::vector<StrategyMap> out;
  enumerate_strategy_maps(set, type, [&](const StrategyMap& m) { out.push_back(m); }, map_cap);
  return out;
}

template <Scalar T>
GameValues<T> brute_game_values(const Payoff& payoff, std::size_t st_cap, std::size_t map_cap) {
  const StoppingTimeSet set = StoppingTimeSet::enumerate(payoff.space(), st_cap);
  GameValues<T> values;

  for (NaType type : {NaType::kTypeI, NaType::kTypeII}) {
    bool first = true;
    T best_upper{}, best_lower{};
    std::vector<std::size_t> best_upper_map, best_lower_map;
    std::size_t best_upper_inner = 0, best_lower_inner = 0;
    enumerate_strategy_maps(
        set, type,
        [&](const StrategyMap& map) {
          GameValueWitness wit_rho, wit_tau;
          const T up = strategy_game_value<T>(payoff, map, MapRole::kRho, set, &wit_rho);
          const T lo = strategy_game_value<T>(payoff, map, MapRole::kTau, set, &wit_tau);
          if (first || up < best_upper) {
            best_upper = up;
            best_upper_map = map.table();
            best_upper_inner = wit_rho.stopping_time_index;
          }
          if (first || best_lower < lo) {
            best_lower = lo;
            best_lower_map = map.table();
            best_lower_inner = wit_tau.stopping_time_index;
          }
          first = false;
        },
        map_cap);
    if (first) {
      throw ValidationError("brute_game_values: no strategy map exists (empty enumeration)");
    }
    if (type == NaType::kTypeI) {
      values.a_upper = best_upper;
      values.a_lower = best_lower;
      values.a_upper_map = std::move(best_upper_map);
      values.a_lower_map = std::move(best_lower_map);
      values.a_upper_inner = best_upper_inner;
      values.a_lower_inner = best_lower_inner;
    } else {
      values.b_upper = best_upper;
      values.b_lower = best_lower;
      values.b_upper_map = std::move(best_upper_map);
      values.b_lower_map = std::move(best_lower_map);
      values.b_upper_inner = best_upper_inner;
      values.b_lower_inner = best_lower_inner;
    }
  }
  return values;
}

namespace {

template <Scalar T>
bool leq(const T& a, const T& b) {
  if constexpr (scalar_exact<T>()) {
    return !(b < a);
  } else {
    return a <= b + kFloatTolerance;
  }
}

template <Scalar T>
SandwichStatus make_status(const std::string& name, bool pass, const T& lhs,
                           const std::string& rel, const T& rhs) {
  SandwichStatus status;
  status.name = name;
  status.pass = pass;
  status.detail = scalar_str<T>(lhs) + " " + rel + " " + scalar_str<T>(rhs) +
                  (pass ? "" : "  <-- FAIL");
  return status;
}

}  // namespace

template <Scalar T>
SandwichReport<T> sandwich_report(const Payoff& payoff, std::size_t st_cap, std::size_t map_cap) {
  const FilteredSpace& space = payoff.space();
  const StoppingTimeSet set = StoppingTimeSet::enumerate(space, st_cap);

  SandwichReport<T> report;
  report.games = brute_game_values<T>(payoff, st_cap, map_cap);

  const std::vector<T> lower = value_lower<T>(payoff, false).values;
  const std::vector<T> lower_strict = value_lower<T>(payoff, true).values;
  const std::vector<T> upper = value_upper<T>(payoff, false).values;
  const std::vector<T> upper_strict = value_upper<T>(payoff, true).values;

  const DynkinSpec<T> game1{lower_strict, upper, TieRule::kHigh};
  const DynkinSpec<T> game2{lower, upper_strict, TieRule::kLow};
  const DynkinSpec<T> game3{lower, upper, TieRule::kHigh};
  const DynkinSpec<T> game4{lower, upper, TieRule::kLow};

  const OpenLoopResult<T> d1_res = open_loop_solve(set, game1, OpenLoopOrder::kInfSup);
  report.d1 = d1_res.value;
  report.d2 = open_loop_solve(set, game2, OpenLoopOrder::kSupInf).value;
  report.d3 = open_loop_solve(set, game3, OpenLoopOrder::kInfSup).value;
  report.d4 = open_loop_solve(set, game4, OpenLoopOrder::kSupInf).value;
  report.d5 = report.d2;  // the strict type-I tau-map construction bounds a_lower by the same game

  // d6: best diagonal value over plain stopping times.
  bool first = true;
  for (std::size_t i = 0; i < set.size(); ++i) {
    const T v = expectation<T>(space, diagonal<T>(payoff, set[i]));
    if (first || report.d6 < v) report.d6 = v;
    first = false;
  }

  // Constructed strict rho-map anchored at the d1 argmin; its value must sit
  // between a_upper and d1.
  const StoppingTime d1_anchor = set[d1_res.outer_witness];
  StrategyMap constructed = build_rho_map<T>(payoff, d1_anchor, /*strict_inner=*/true);
  report.construction_value = strategy_game_value<T>(payoff, constructed, MapRole::kRho, set);

  const GameValues<T>& g = report.games;
  report.statuses.push_back(make_status<T>("S1", leq(g.a_upper, report.d1), g.a_upper, "<=", report.d1));
  report.statuses.push_back(make_status<T>("S2a", leq(report.d2, g.a_upper), report.d2, "<=", g.a_upper));
  report.statuses.push_back(make_status<T>("S2b", leq(report.d2, g.b_upper), report.d2, "<=", g.b_upper));
  report.statuses.push_back(make_status<T>("S3", leq(g.b_upper, report.d3), g.b_upper, "<=", report.d3));
  report.statuses.push_back(make_status<T>("S4", leq(report.d4, g.b_lower), report.d4, "<=", g.b_lower));
  report.statuses.push_back(make_status<T>("S5", leq(report.d5, g.a_lower), report.d5, "<=", g.a_lower));
  report.statuses.push_back(make_status<T>("S6", leq(g.a_lower, report.d6), g.a_lower, "<=", report.d6));
  report.statuses.push_back(make_status<T>("CONSTRUCT_LOWER", leq(g.a_upper, report.construction_value),
                                           g.a_upper, "<=", report.construction_value));
  report.statuses.push_back(make_status<T>("CONSTRUCT_UPPER", leq(report.construction_value, report.d1),
                                           report.construction_value, "<=", report.d1));

  report.s1_binds = approx_equal(g.a_upper, report.d1);
  report.s5_binds = approx_equal(g.a_lower, report.d5);
  report.all_pass = true;
  for (const SandwichStatus& s : report.statuses) report.all_pass = report.all_pass && s.pass;
  return report;
}

template GameValues<Rat> brute_game_values<Rat>(const Payoff&, std::size_t, std::size_t);
template GameValues<double> brute_game_values<double>(const Payoff&, std::size_t, std::size_t);
template SandwichReport<Rat> sandwich_report<Rat>(const Payoff&, std::size_t, std::size_t);
template SandwichReport<double> sandwich_report<double>(const Payoff&, std::size_t, std::size_t);

}  // namespace stopgame
