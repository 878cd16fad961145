#pragma once

#include <functional>
#include <string>
#include <vector>

#include "stopgame/strategies.hpp"

namespace stopgame {

/// Streams every TABLE map over the enumeration that satisfies the
/// non-anticipativity condition of the requested type, by DFS over table
/// assignments with incremental pairwise pruning. Emission order is
/// deterministic (lexicographic in the table). Throws CapacityError when
/// more than `map_cap` maps would be emitted.
void enumerate_strategy_maps(const StoppingTimeSet& set, NaType type,
                             const std::function<void(const StrategyMap&)>& visit,
                             std::size_t map_cap = kDefaultMapCap);

std::vector<StrategyMap> collect_strategy_maps(const StoppingTimeSet& set, NaType type,
                                               std::size_t map_cap = kDefaultMapCap);

/// The four game values over strategy-map classes, exact by exhaustion:
///   a_upper: inf over type-I rho-maps of sup over plain tau,
///   a_lower: sup over type-I tau-maps of inf over plain rho,
///   b_upper / b_lower: the same over type II.
/// Witness tables re-evaluate to the stored values.
template <Scalar T>
struct GameValues {
  T a_upper{}, a_lower{}, b_upper{}, b_lower{};
  std::vector<std::size_t> a_upper_map, a_lower_map, b_upper_map, b_lower_map;
  std::size_t a_upper_inner = 0, a_lower_inner = 0, b_upper_inner = 0, b_lower_inner = 0;
};

template <Scalar T>
GameValues<T> brute_game_values(const Payoff& payoff, std::size_t st_cap = kDefaultStopTimeCap,
                                std::size_t map_cap = kDefaultMapCap);

struct SandwichStatus {
  std::string name;
  bool pass = false;
  std::string detail;  // the two sides, and the witness when failed
};

/// The one-sided bounds extracted from the construction and best-response
/// arguments, evaluated exactly with attained optimizers:
///   S1: a_upper <= inf-sup(lower strict, upper, ties high)
///   S2: a_upper and b_upper >= sup-inf(lower, upper strict, ties low)
///   S3: b_upper <= inf-sup(lower, upper, ties high)
///   S4: b_lower >= sup-inf(lower, upper, ties low)
///   S5: a_lower >= sup-inf(lower, upper strict, ties low)
///   S6: a_lower <= max over plain sigma of E[diagonal]
/// plus the bracket a_upper <= value(strict rho-map at the S1 argmin anchor)
/// <= S1 right-hand side.
template <Scalar T>
struct SandwichReport {
  GameValues<T> games;
  T d1{}, d2{}, d3{}, d4{}, d5{}, d6{};  // d5 duplicates d2's game; d6 is the diagonal bound
  bool s1_binds = false;
  bool s5_binds = false;
  T construction_value{};  // sup over tau against the constructed strict rho-map
  std::vector<SandwichStatus> statuses;
  bool all_pass = false;
};

template <Scalar T>
SandwichReport<T> sandwich_report(const Payoff& payoff, std::size_t st_cap = kDefaultStopTimeCap,
                                  std::size_t map_cap = kDefaultMapCap);

}  // namespace stopgame
