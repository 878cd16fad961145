#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "stopgame/filtered_space.hpp"

namespace stopgame {

/// Adapted stop/continue rule on the event tree, kept in canonical form: the
/// STOP nodes form an antichain covering every root-to-leaf path, every
/// descendant of a STOP node is CONTINUE. Equality of stopping times is then
/// label equality. Immutable; copies share the space.
class StoppingTime {
 public:
  /// Canonicalizes raw labels (first STOP along each path wins) and validates
  /// that every path stops. Throws ValidationError otherwise.
  static StoppingTime from_labels(const FilteredSpace& space, const std::vector<uint8_t>& stop);

  /// Constant stopping time at grid index k: STOP exactly at depth-k nodes.
  static StoppingTime constant(const FilteredSpace& space, int grid_index);

  /// Builds from the per-leaf stop depth and validates adaptedness: the
  /// canonical labels must reproduce the given depths exactly.
  static StoppingTime from_leaf_depths(const FilteredSpace& space, const std::vector<int>& depths);

  const FilteredSpace& space() const { return *space_; }
  bool stops_at(int node) const { return stop_[static_cast<std::size_t>(node)] != 0; }
  const std::vector<uint8_t>& labels() const { return stop_; }

  /// Grid index (= depth) where the path through this leaf stops.
  int value_index(int leaf_ordinal) const { return leaf_depth_[static_cast<std::size_t>(leaf_ordinal)]; }
  int stop_node(int leaf_ordinal) const {
    return space_->ancestor_at(space_->leaf_node(leaf_ordinal), value_index(leaf_ordinal));
  }
  const std::vector<int>& leaf_depths() const { return leaf_depth_; }

  /// STOP nodes in ascending id order (the antichain).
  std::vector<int> stop_nodes() const;

  friend bool operator==(const StoppingTime& a, const StoppingTime& b) {
    return a.stop_ == b.stop_;
  }
  friend bool operator!=(const StoppingTime& a, const StoppingTime& b) { return !(a == b); }

  std::size_t hash() const;

 private:
  StoppingTime(const FilteredSpace* space, std::vector<uint8_t> stop, std::vector<int> leaf_depth)
      : space_(space), stop_(std::move(stop)), leaf_depth_(std::move(leaf_depth)) {}

  const FilteredSpace* space_;
  std::vector<uint8_t> stop_;
  std::vector<int> leaf_depth_;
};

struct StoppingTimeHash {
  std::size_t operator()(const StoppingTime& st) const { return st.hash(); }
};

/// Pathwise minimum / maximum; both are stopping times.
StoppingTime st_meet(const StoppingTime& a, const StoppingTime& b);
StoppingTime st_join(const StoppingTime& a, const StoppingTime& b);

/// Membership of rho in the strict-future set of tau: on every leaf either
/// tau < rho, or tau = rho = horizon (the only stopping time strictly after
/// the horizon is the horizon itself).
bool strictly_after(const StoppingTime& rho, const StoppingTime& tau);

/// Membership of rho in the from-tau set: rho >= tau on every leaf.
bool pathwise_geq(const StoppingTime& rho, const StoppingTime& tau);

/// Leaf-indexed conditional expectation given the information at sigma: on
/// each leaf, the probability-weighted average of X over the leaves sharing
/// that leaf's stop node. Constant on each sigma-atom; exact under rationals.
template <Scalar T>
std::vector<T> conditional_expectation(const FilteredSpace& space, const std::vector<T>& leaf_values,
                                       const StoppingTime& sigma);

}  // namespace stopgame
