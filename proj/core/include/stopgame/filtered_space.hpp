#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stopgame/errors.hpp"
#include "stopgame/rational.hpp"
#include "stopgame/scalar.hpp"

namespace stopgame {

/// Strictly increasing grid of rational times. The last entry is the horizon;
/// multi-point grids start at 0. A single-point grid {T} is the degenerate
/// space that is already at the horizon.
struct TimeGrid {
  std::vector<Rat> times;

  int horizon_index() const { return static_cast<int>(times.size()) - 1; }
  const Rat& horizon() const { return times.back(); }
  const Rat& at(int idx) const { return times.at(static_cast<std::size_t>(idx)); }
  int size() const { return static_cast<int>(times.size()); }
};

/// One node of the space spec as given by the caller (ids are caller labels;
/// build renumbers breadth-first).
struct SpaceNodeSpec {
  int id = 0;
  int depth = 0;
  std::optional<int> parent;     // absent for the root
  std::optional<Rat> branch_prob;  // absent for the root (implicitly 1)
};

struct SpaceSpec {
  std::vector<Rat> grid;
  std::vector<SpaceNodeSpec> nodes;
};

/// Finite filtered probability space on an event tree. Atoms of the
/// information set at grid index k are the depth-k nodes; every leaf sits at
/// the horizon depth. Nodes are numbered breadth-first (ids 0..n-1, depth
/// layer by layer, input order preserved within a layer), so all reports and
/// enumerations are reproducible byte-for-byte. Immutable after build.
class FilteredSpace {
 public:
  /// Validates every structural invariant; throws ValidationError naming the
  /// offending node (dangling parent, depth mismatch, probability-sum
  /// violation, short leaf, bad grid).
  static FilteredSpace build(const SpaceSpec& spec);

  const TimeGrid& grid() const { return grid_; }
  int horizon_index() const { return grid_.horizon_index(); }

  int node_count() const { return static_cast<int>(depth_.size()); }
  int leaf_count() const { return static_cast<int>(leaves_.size()); }
  int depth(int node) const { return depth_[static_cast<std::size_t>(node)]; }
  int parent(int node) const { return parent_[static_cast<std::size_t>(node)]; }
  bool is_leaf(int node) const { return depth(node) == horizon_index(); }
  std::span<const int> children(int node) const;
  std::span<const int> leaves() const { return leaves_; }
  std::span<const int> nodes_at_depth(int d) const;

  const Rat& branch_prob(int node) const { return branch_prob_[static_cast<std::size_t>(node)]; }
  /// Probability of the atom: product of branch probabilities from the root.
  const Rat& path_prob(int node) const { return path_prob_[static_cast<std::size_t>(node)]; }

  /// Ancestor of `node` at depth d <= depth(node).
  int ancestor_at(int node, int d) const { return ancestors_[static_cast<std::size_t>(node)][static_cast<std::size_t>(d)]; }

  /// Leaves below a node form a contiguous ordinal range [begin, end).
  int leaf_begin(int node) const { return leaf_begin_[static_cast<std::size_t>(node)]; }
  int leaf_end(int node) const { return leaf_end_[static_cast<std::size_t>(node)]; }

  int leaf_node(int leaf_ordinal) const { return leaves_[static_cast<std::size_t>(leaf_ordinal)]; }
  int leaf_ordinal(int node) const;

  /// Caller label of a node (breadth-first renumbering is recorded).
  int original_id(int node) const { return original_id_[static_cast<std::size_t>(node)]; }
  std::optional<int> node_for_original_id(int original) const;

 private:
  FilteredSpace() = default;

  TimeGrid grid_;
  std::vector<int> depth_;
  std::vector<int> parent_;           // -1 for root
  std::vector<Rat> branch_prob_;
  std::vector<Rat> path_prob_;
  std::vector<int> children_flat_;
  std::vector<int> children_begin_;   // node -> offset into children_flat_
  std::vector<int> leaves_;
  std::vector<int> depth_layer_flat_;
  std::vector<int> depth_layer_begin_;
  std::vector<std::vector<int>> ancestors_;
  std::vector<int> leaf_begin_, leaf_end_;
  std::vector<int> original_id_;
};

/// Full expectation of a leaf-indexed variable: sum of path_prob * value.
/// Exact under rational arithmetic.
template <Scalar T>
T expectation(const FilteredSpace& space, const std::vector<T>& leaf_values);

template <Scalar T>
T path_prob_as(const FilteredSpace& space, int node) {
  return scalar_cast<T>(space.path_prob(node));
}

}  // namespace stopgame
