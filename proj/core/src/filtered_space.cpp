#include "stopgame/filtered_space.hpp"

#include <unordered_map>

namespace stopgame {

namespace {

void validate_grid(const std::vector<Rat>& grid) {
  if (grid.empty()) throw ValidationError("grid: must have at least one time point");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i - 1] < grid[i])) {
      throw ValidationError("grid: times must be strictly increasing (index " +
                            std::to_string(i) + ")");
    }
  }
  if (!(grid.back() > Rat(0))) {
    throw ValidationError("grid: horizon must be positive");
  }
  if (grid.size() >= 2 && grid.front() != Rat(0)) {
    throw ValidationError("grid: multi-point grids must start at time 0");
  }
}

}  // namespace

FilteredSpace FilteredSpace::build(const SpaceSpec& spec) {
  validate_grid(spec.grid);
  if (spec.nodes.empty()) throw ValidationError("space: no nodes");

  const int horizon = static_cast<int>(spec.grid.size()) - 1;

  // Breadth-first renumbering from the root, children in input order. Keeps
  // every subtree contiguous within each depth layer.
  std::unordered_map<int, std::size_t> input_by_id;
  for (std::size_t i = 0; i < spec.nodes.size(); ++i) {
    if (!input_by_id.emplace(spec.nodes[i].id, i).second) {
      throw ValidationError("space: duplicate node id " + std::to_string(spec.nodes[i].id),
                            spec.nodes[i].id);
    }
  }
  std::vector<std::vector<std::size_t>> input_children(spec.nodes.size());
  std::optional<std::size_t> root_input;
  for (std::size_t i = 0; i < spec.nodes.size(); ++i) {
    const SpaceNodeSpec& n = spec.nodes[i];
    if (n.parent.has_value()) {
      auto it = input_by_id.find(*n.parent);
      if (it == input_by_id.end()) {
        throw ValidationError("space: node " + std::to_string(n.id) +
                                  " has dangling parent " + std::to_string(*n.parent), n.id);
      }
      input_children[it->second].push_back(i);
    } else {
      if (root_input.has_value()) throw ValidationError("space: expected exactly one root node");
      root_input = i;
    }
  }
  if (!root_input.has_value()) throw ValidationError("space: expected exactly one root node");

  std::vector<std::size_t> order;
  order.reserve(spec.nodes.size());
  order.push_back(*root_input);
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (std::size_t c : input_children[order[head]]) order.push_back(c);
  }
  if (order.size() != spec.nodes.size()) {
    throw ValidationError("space: some nodes are unreachable from the root");
  }

  std::unordered_map<int, int> by_original;  // original id -> new id
  for (std::size_t new_id = 0; new_id < order.size(); ++new_id) {
    by_original.emplace(spec.nodes[order[new_id]].id, static_cast<int>(new_id));
  }

  FilteredSpace s;
  s.grid_.times = spec.grid;
  const int count = static_cast<int>(spec.nodes.size());
  s.depth_.resize(spec.nodes.size());
  s.parent_.resize(spec.nodes.size());
  s.branch_prob_.resize(spec.nodes.size());
  s.original_id_.resize(spec.nodes.size());

  for (int new_id = 0; new_id < count; ++new_id) {
    const SpaceNodeSpec& n = spec.nodes[order[static_cast<std::size_t>(new_id)]];
    s.original_id_[static_cast<std::size_t>(new_id)] = n.id;
    s.depth_[static_cast<std::size_t>(new_id)] = n.depth;
    if (n.depth < 0 || n.depth > horizon) {
      throw ValidationError("space: node " + std::to_string(n.id) +
                                " depth out of grid range", n.id);
    }
    if (n.depth == 0) {
      if (n.parent.has_value()) {
        throw ValidationError("space: root node " + std::to_string(n.id) +
                                  " must not have a parent", n.id);
      }
      s.parent_[static_cast<std::size_t>(new_id)] = -1;
      s.branch_prob_[static_cast<std::size_t>(new_id)] = Rat(1);
    } else {
      if (!n.parent.has_value()) {
        throw ValidationError("space: node " + std::to_string(n.id) +
                                  " at positive depth has no parent", n.id);
      }
      auto it = by_original.find(*n.parent);
      if (it == by_original.end()) {
        throw ValidationError("space: node " + std::to_string(n.id) +
                                  " has dangling parent " + std::to_string(*n.parent), n.id);
      }
      const int parent_new = it->second;
      if (s.depth_[static_cast<std::size_t>(parent_new)] != n.depth - 1) {
        throw ValidationError("space: node " + std::to_string(n.id) +
                                  " depth is not parent depth + 1", n.id);
      }
      s.parent_[static_cast<std::size_t>(new_id)] = parent_new;
      if (!n.branch_prob.has_value()) {
        throw ValidationError("space: node " + std::to_string(n.id) +
                                  " missing branch probability", n.id);
      }
      if (!(*n.branch_prob > Rat(0)) || *n.branch_prob > Rat(1)) {
        throw ValidationError("space: node " + std::to_string(n.id) +
                                  " branch probability outside (0,1]", n.id);
      }
      s.branch_prob_[static_cast<std::size_t>(new_id)] = *n.branch_prob;
    }
  }

  int roots = 0;
  for (int i = 0; i < count; ++i) {
    if (s.depth_[static_cast<std::size_t>(i)] == 0) ++roots;
  }
  if (roots != 1) throw ValidationError("space: expected exactly one root node");

  // Children, in new-id order.
  std::vector<std::vector<int>> children(spec.nodes.size());
  for (int i = 0; i < count; ++i) {
    if (s.parent_[static_cast<std::size_t>(i)] >= 0) {
      children[static_cast<std::size_t>(s.parent_[static_cast<std::size_t>(i)])].push_back(i);
    }
  }
  s.children_begin_.resize(spec.nodes.size() + 1, 0);
  for (int i = 0; i < count; ++i) {
    s.children_begin_[static_cast<std::size_t>(i) + 1] =
        s.children_begin_[static_cast<std::size_t>(i)] +
        static_cast<int>(children[static_cast<std::size_t>(i)].size());
    for (int c : children[static_cast<std::size_t>(i)]) s.children_flat_.push_back(c);
  }

  // Per-node checks: children probabilities sum to 1; leaves at the horizon.
  for (int i = 0; i < count; ++i) {
    const auto& ch = children[static_cast<std::size_t>(i)];
    if (ch.empty()) {
      if (s.depth_[static_cast<std::size_t>(i)] != horizon) {
        throw ValidationError("space: node " + std::to_string(s.original_id_[static_cast<std::size_t>(i)]) +
                                  " is childless before the horizon",
                              s.original_id_[static_cast<std::size_t>(i)]);
      }
    } else {
      Rat sum(0);
      for (int c : ch) sum += s.branch_prob_[static_cast<std::size_t>(c)];
      if (sum != Rat(1)) {
        throw ValidationError("space: children of node " +
                                  std::to_string(s.original_id_[static_cast<std::size_t>(i)]) +
                                  " have branch probabilities summing to " + sum.str(),
                              s.original_id_[static_cast<std::size_t>(i)]);
      }
    }
  }

  // Path probabilities (parents precede children in bfs order).
  s.path_prob_.resize(spec.nodes.size());
  for (int i = 0; i < count; ++i) {
    const int p = s.parent_[static_cast<std::size_t>(i)];
    s.path_prob_[static_cast<std::size_t>(i)] =
        p < 0 ? Rat(1) : s.path_prob_[static_cast<std::size_t>(p)] * s.branch_prob_[static_cast<std::size_t>(i)];
  }

  // Depth layers.
  s.depth_layer_begin_.resize(static_cast<std::size_t>(horizon) + 2, 0);
  for (int d = 0; d <= horizon; ++d) {
    s.depth_layer_begin_[static_cast<std::size_t>(d) + 1] = s.depth_layer_begin_[static_cast<std::size_t>(d)];
    for (int i = 0; i < count; ++i) {
      if (s.depth_[static_cast<std::size_t>(i)] == d) {
        s.depth_layer_flat_.push_back(i);
        ++s.depth_layer_begin_[static_cast<std::size_t>(d) + 1];
      }
    }
  }

  for (int i = 0; i < count; ++i) {
    if (s.depth_[static_cast<std::size_t>(i)] == horizon) s.leaves_.push_back(i);
  }

  Rat leaf_sum(0);
  for (int l : s.leaves_) leaf_sum += s.path_prob_[static_cast<std::size_t>(l)];
  if (leaf_sum != Rat(1)) {
    throw ValidationError("space: leaf path probabilities sum to " + leaf_sum.str());
  }

  // Ancestor chains.
  s.ancestors_.resize(spec.nodes.size());
  for (int i = 0; i < count; ++i) {
    const int d = s.depth_[static_cast<std::size_t>(i)];
    auto& anc = s.ancestors_[static_cast<std::size_t>(i)];
    anc.assign(static_cast<std::size_t>(d) + 1, -1);
    int cur = i;
    for (int k = d; k >= 0; --k) {
      anc[static_cast<std::size_t>(k)] = cur;
      cur = s.parent_[static_cast<std::size_t>(cur)];
    }
  }

  // Contiguous leaf-ordinal range under each node. BFS numbering keeps
  // subtrees contiguous within the leaf layer.
  s.leaf_begin_.assign(spec.nodes.size(), -1);
  s.leaf_end_.assign(spec.nodes.size(), -1);
  for (int ord = 0; ord < static_cast<int>(s.leaves_.size()); ++ord) {
    int cur = s.leaves_[static_cast<std::size_t>(ord)];
    while (cur >= 0) {
      auto idx = static_cast<std::size_t>(cur);
      if (s.leaf_begin_[idx] < 0) s.leaf_begin_[idx] = ord;
      if (s.leaf_end_[idx] >= 0 && s.leaf_end_[idx] != ord) {
        throw ValidationError("space: subtree leaves are not contiguous at node " +
                              std::to_string(s.original_id_[idx]), s.original_id_[idx]);
      }
      s.leaf_end_[idx] = ord + 1;
      cur = s.parent_[idx];
    }
  }

  return s;
}

std::span<const int> FilteredSpace::children(int node) const {
  const auto b = static_cast<std::size_t>(children_begin_[static_cast<std::size_t>(node)]);
  const auto e = static_cast<std::size_t>(children_begin_[static_cast<std::size_t>(node) + 1]);
  return {children_flat_.data() + b, e - b};
}

std::span<const int> FilteredSpace::nodes_at_depth(int d) const {
  const auto b = static_cast<std::size_t>(depth_layer_begin_[static_cast<std::size_t>(d)]);
  const auto e = static_cast<std::size_t>(depth_layer_begin_[static_cast<std::size_t>(d) + 1]);
  return {depth_layer_flat_.data() + b, e - b};
}

int FilteredSpace::leaf_ordinal(int node) const {
  if (!is_leaf(node)) throw ValidationError("leaf_ordinal: node is not a leaf");
  return leaf_begin_[static_cast<std::size_t>(node)];
}

std::optional<int> FilteredSpace::node_for_original_id(int original) const {
  for (int i = 0; i < node_count(); ++i) {
    if (original_id_[static_cast<std::size_t>(i)] == original) return i;
  }
  return std::nullopt;
}

template <Scalar T>
T expectation(const FilteredSpace& space, const std::vector<T>& leaf_values) {
  if (static_cast<int>(leaf_values.size()) != space.leaf_count()) {
    throw ValidationError("expectation: value count does not match leaf count");
  }
  T acc = scalar_cast<T>(Rat(0));
  for (int ord = 0; ord < space.leaf_count(); ++ord) {
    acc += path_prob_as<T>(space, space.leaf_node(ord)) * leaf_values[static_cast<std::size_t>(ord)];
  }
  return acc;
}

template Rat expectation<Rat>(const FilteredSpace&, const std::vector<Rat>&);
template double expectation<double>(const FilteredSpace&, const std::vector<double>&);

}  // namespace stopgame
