#pragma once

#include <vector>

#include "stopgame/payoff.hpp"

namespace stopgame {

enum class FamilySide { kLower, kUpper };

/// Admissible value family stored as one value per node: the family's value
/// at a stopping time is its value at the stop node, so consistency across
/// stopping times that agree is structural.
template <Scalar T>
struct NodeValueFamily {
  std::vector<T> values;  // per node
  FamilySide side = FamilySide::kLower;
  bool strict = false;
};

/// Best-case conditional value for the player who moves second, frozen at
/// each node: backward induction over the subtree rooted at node a (depth d)
/// with reward U(depth(m), d, m), taking min against continuation. Non-strict
/// allows stopping at a itself; strict starts at a's children (and equals the
/// diagonal at the horizon, where the only strictly-later time is the horizon).
template <Scalar T>
NodeValueFamily<T> value_lower(const Payoff& payoff, bool strict);

/// Mirror with max and reward U(d, depth(m), m): the first argument slot is
/// frozen at the subtree root.
template <Scalar T>
NodeValueFamily<T> value_upper(const Payoff& payoff, bool strict);

/// Canonical attained optimizer of the inner problem started at `base`:
/// stops at the earliest node (smallest depth, then smallest id) where
/// stopping is backward-induction optimal. Pathwise >= base; with strict,
/// strictly later except at the horizon. On finite spaces the optimum is
/// attained exactly, so epsilon defaults to zero; a positive epsilon relaxes
/// the stop rule (stop once the reward is within epsilon of the continuation)
/// to let refinement experiments inject inexact optimizers.
template <Scalar T>
StoppingTime inner_optimizer(const Payoff& payoff, FamilySide side, bool strict,
                             const StoppingTime& base, const T& epsilon = T{});

/// Leaf-indexed view of an admissible family at a stopping time: value at the
/// stop node of each path.
template <Scalar T>
std::vector<T> family_at(const FilteredSpace& space, const std::vector<T>& node_values,
                         const StoppingTime& st);

}  // namespace stopgame
