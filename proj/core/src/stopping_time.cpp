#include "stopgame/stopping_time.hpp"

#include <algorithm>

namespace stopgame {

StoppingTime StoppingTime::from_labels(const FilteredSpace& space, const std::vector<uint8_t>& stop) {
  if (static_cast<int>(stop.size()) != space.node_count()) {
    throw ValidationError("stopping time: label count does not match node count");
  }
  // First STOP along each path wins; descendants forced to CONTINUE.
  std::vector<uint8_t> canonical(stop.size(), 0);
  std::vector<uint8_t> stopped_above(stop.size(), 0);
  for (int n = 0; n < space.node_count(); ++n) {
    const int p = space.parent(n);
    const bool above = p >= 0 && (stopped_above[static_cast<std::size_t>(p)] != 0 ||
                                  canonical[static_cast<std::size_t>(p)] != 0);
    stopped_above[static_cast<std::size_t>(n)] = above ? 1 : 0;
    canonical[static_cast<std::size_t>(n)] = (!above && stop[static_cast<std::size_t>(n)] != 0) ? 1 : 0;
  }
  std::vector<int> leaf_depth(static_cast<std::size_t>(space.leaf_count()), -1);
  for (int ord = 0; ord < space.leaf_count(); ++ord) {
    const int leaf = space.leaf_node(ord);
    for (int d = 0; d <= space.depth(leaf); ++d) {
      if (canonical[static_cast<std::size_t>(space.ancestor_at(leaf, d))] != 0) {
        leaf_depth[static_cast<std::size_t>(ord)] = d;
        break;
      }
    }
    if (leaf_depth[static_cast<std::size_t>(ord)] < 0) {
      throw ValidationError("stopping time: path through leaf ordinal " + std::to_string(ord) +
                            " never stops");
    }
  }
  return StoppingTime(&space, std::move(canonical), std::move(leaf_depth));
}

StoppingTime StoppingTime::constant(const FilteredSpace& space, int grid_index) {
  if (grid_index < 0 || grid_index > space.horizon_index()) {
    throw ValidationError("stopping time: constant index outside the grid");
  }
  std::vector<uint8_t> stop(static_cast<std::size_t>(space.node_count()), 0);
  for (int n : space.nodes_at_depth(grid_index)) stop[static_cast<std::size_t>(n)] = 1;
  return from_labels(space, stop);
}

StoppingTime StoppingTime::from_leaf_depths(const FilteredSpace& space, const std::vector<int>& depths) {
  if (static_cast<int>(depths.size()) != space.leaf_count()) {
    throw ValidationError("stopping time: depth count does not match leaf count");
  }
  std::vector<uint8_t> stop(static_cast<std::size_t>(space.node_count()), 0);
  for (int ord = 0; ord < space.leaf_count(); ++ord) {
    const int d = depths[static_cast<std::size_t>(ord)];
    if (d < 0 || d > space.horizon_index()) {
      throw ValidationError("stopping time: leaf depth outside the grid");
    }
    stop[static_cast<std::size_t>(space.ancestor_at(space.leaf_node(ord), d))] = 1;
  }
  StoppingTime st = from_labels(space, stop);
  if (st.leaf_depths() != depths) {
    throw ValidationError("stopping time: per-leaf depths are not adapted");
  }
  return st;
}

std::vector<int> StoppingTime::stop_nodes() const {
  std::vector<int> out;
  for (int n = 0; n < space_->node_count(); ++n) {
    if (stops_at(n)) out.push_back(n);
  }
  return out;
}

std::size_t StoppingTime::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (uint8_t b : stop_) {
    h ^= b;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

void check_compatible(const StoppingTime& a, const StoppingTime& b, const char* what) {
  if (a.labels().size() != b.labels().size()) {
    throw ValidationError(std::string(what) + ": stopping times live on different spaces");
  }
}

}  // namespace

StoppingTime st_meet(const StoppingTime& a, const StoppingTime& b) {
  check_compatible(a, b, "st_meet");
  const FilteredSpace& space = a.space();
  std::vector<int> depths(static_cast<std::size_t>(space.leaf_count()));
  for (int ord = 0; ord < space.leaf_count(); ++ord) {
    depths[static_cast<std::size_t>(ord)] = std::min(a.value_index(ord), b.value_index(ord));
  }
  return StoppingTime::from_leaf_depths(space, depths);
}

StoppingTime st_join(const StoppingTime& a, const StoppingTime& b) {
  check_compatible(a, b, "st_join");
  const FilteredSpace& space = a.space();
  std::vector<int> depths(static_cast<std::size_t>(space.leaf_count()));
  for (int ord = 0; ord < space.leaf_count(); ++ord) {
    depths[static_cast<std::size_t>(ord)] = std::max(a.value_index(ord), b.value_index(ord));
  }
  return StoppingTime::from_leaf_depths(space, depths);
}

bool strictly_after(const StoppingTime& rho, const StoppingTime& tau) {
  check_compatible(rho, tau, "strictly_after");
  const FilteredSpace& space = rho.space();
  const int horizon = space.horizon_index();
  for (int ord = 0; ord < space.leaf_count(); ++ord) {
    const int r = rho.value_index(ord);
    const int t = tau.value_index(ord);
    if (!(t < r || (t == r && r == horizon))) return false;
  }
  return true;
}

bool pathwise_geq(const StoppingTime& rho, const StoppingTime& tau) {
  check_compatible(rho, tau, "pathwise_geq");
  const FilteredSpace& space = rho.space();
  for (int ord = 0; ord < space.leaf_count(); ++ord) {
    if (rho.value_index(ord) < tau.value_index(ord)) return false;
  }
  return true;
}

template <Scalar T>
std::vector<T> conditional_expectation(const FilteredSpace& space, const std::vector<T>& leaf_values,
                                       const StoppingTime& sigma) {
  if (static_cast<int>(leaf_values.size()) != space.leaf_count()) {
    throw ValidationError("conditional_expectation: value count does not match leaf count");
  }
  std::vector<T> out(leaf_values.size(), scalar_cast<T>(Rat(0)));
  for (int node : sigma.stop_nodes()) {
    T acc = scalar_cast<T>(Rat(0));
    for (int ord = space.leaf_begin(node); ord < space.leaf_end(node); ++ord) {
      acc += path_prob_as<T>(space, space.leaf_node(ord)) * leaf_values[static_cast<std::size_t>(ord)];
    }
    const T atom_prob = path_prob_as<T>(space, node);
    const T avg = acc / atom_prob;
    for (int ord = space.leaf_begin(node); ord < space.leaf_end(node); ++ord) {
      out[static_cast<std::size_t>(ord)] = avg;
    }
  }
  return out;
}

template std::vector<Rat> conditional_expectation<Rat>(const FilteredSpace&, const std::vector<Rat>&,
                                                       const StoppingTime&);
template std::vector<double> conditional_expectation<double>(const FilteredSpace&,
                                                             const std::vector<double>&,
                                                             const StoppingTime&);

}  // namespace stopgame
