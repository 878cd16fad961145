#include "stopgame/conditional_values.hpp"

namespace stopgame {

namespace {

// Snell recursion over the subtree rooted at `root` with reward depending on
// the frozen index d0 = depth(root). Fills value and a stop-optimal flag per
// visited node; min for the lower side, max for the upper.
template <Scalar T>
struct SubtreeSnell {
  const Payoff& payoff;
  const FilteredSpace& space;
  FamilySide side;
  int frozen_depth;
  T epsilon;                      // relaxes the stop rule, not the values
  std::vector<T> value;          // indexed by node id (only subtree entries valid)
  std::vector<uint8_t> stop_opt;  // reward branch binds (within epsilon)

  SubtreeSnell(const Payoff& p, FamilySide s, int d0, const T& eps = T{})
      : payoff(p), space(p.space()), side(s), frozen_depth(d0), epsilon(eps) {
    value.resize(static_cast<std::size_t>(space.node_count()));
    stop_opt.resize(static_cast<std::size_t>(space.node_count()), 0);
  }

  T reward(int node) const {
    const int d = space.depth(node);
    const Rat& r = side == FamilySide::kLower ? payoff.eval(d, frozen_depth, node)
                                              : payoff.eval(frozen_depth, d, node);
    return scalar_cast<T>(r);
  }

  const T& run(int node) {
    const T r = reward(node);
    auto idx = static_cast<std::size_t>(node);
    if (space.is_leaf(node)) {
      value[idx] = r;
      stop_opt[idx] = 1;
      return value[idx];
    }
    T cont = continuation(node);
    // Ties stop (earliest rule); a positive epsilon widens the stop branch.
    const bool stop = side == FamilySide::kLower ? !(cont + epsilon < r) : !(r + epsilon < cont);
    value[idx] = (side == FamilySide::kLower ? !(cont < r) : !(r < cont)) ? r : cont;
    stop_opt[idx] = stop ? 1 : 0;
    return value[idx];
  }

  T continuation(int node) {
    T cont = scalar_cast<T>(Rat(0));
    for (int c : space.children(node)) {
      cont += scalar_cast<T>(space.branch_prob(c)) * run(c);
    }
    return cont;
  }
};

template <Scalar T>
NodeValueFamily<T> compute_family(const Payoff& payoff, FamilySide side, bool strict) {
  const FilteredSpace& space = payoff.space();
  NodeValueFamily<T> family;
  family.side = side;
  family.strict = strict;
  family.values.resize(static_cast<std::size_t>(space.node_count()));
  for (int a = 0; a < space.node_count(); ++a) {
    SubtreeSnell<T> snell(payoff, side, space.depth(a));
    if (!strict) {
      family.values[static_cast<std::size_t>(a)] = snell.run(a);
    } else if (space.is_leaf(a)) {
      family.values[static_cast<std::size_t>(a)] = snell.reward(a);
    } else {
      family.values[static_cast<std::size_t>(a)] = snell.continuation(a);
    }
  }
  return family;
}

}  // namespace

template <Scalar T>
NodeValueFamily<T> value_lower(const Payoff& payoff, bool strict) {
  return compute_family<T>(payoff, FamilySide::kLower, strict);
}

template <Scalar T>
NodeValueFamily<T> value_upper(const Payoff& payoff, bool strict) {
  return compute_family<T>(payoff, FamilySide::kUpper, strict);
}

namespace {

// First-optimal walk: stop at the first node whose reward branch binds.
template <Scalar T>
void mark_first_optimal(const FilteredSpace& space, const SubtreeSnell<T>& snell, int node,
                        std::vector<int>& leaf_depths) {
  if (snell.stop_opt[static_cast<std::size_t>(node)] != 0) {
    for (int ord = space.leaf_begin(node); ord < space.leaf_end(node); ++ord) {
      leaf_depths[static_cast<std::size_t>(ord)] = space.depth(node);
    }
    return;
  }
  for (int c : space.children(node)) mark_first_optimal(space, snell, c, leaf_depths);
}

}  // namespace

template <Scalar T>
StoppingTime inner_optimizer(const Payoff& payoff, FamilySide side, bool strict,
                             const StoppingTime& base, const T& epsilon) {
  const FilteredSpace& space = payoff.space();
  std::vector<int> leaf_depths(static_cast<std::size_t>(space.leaf_count()), -1);
  for (int a : base.stop_nodes()) {
    SubtreeSnell<T> snell(payoff, side, space.depth(a), epsilon);
    if (!strict) {
      snell.run(a);
      mark_first_optimal(space, snell, a, leaf_depths);
    } else if (space.is_leaf(a)) {
      leaf_depths[static_cast<std::size_t>(space.leaf_ordinal(a))] = space.depth(a);
    } else {
      snell.continuation(a);  // fills the subtree below a
      for (int c : space.children(a)) mark_first_optimal(space, snell, c, leaf_depths);
    }
  }
  return StoppingTime::from_leaf_depths(space, leaf_depths);
}

template <Scalar T>
std::vector<T> family_at(const FilteredSpace& space, const std::vector<T>& node_values,
                         const StoppingTime& st) {
  std::vector<T> out(static_cast<std::size_t>(space.leaf_count()));
  for (int ord = 0; ord < space.leaf_count(); ++ord) {
    out[static_cast<std::size_t>(ord)] = node_values[static_cast<std::size_t>(st.stop_node(ord))];
  }
  return out;
}

template NodeValueFamily<Rat> value_lower<Rat>(const Payoff&, bool);
template NodeValueFamily<double> value_lower<double>(const Payoff&, bool);
template NodeValueFamily<Rat> value_upper<Rat>(const Payoff&, bool);
template NodeValueFamily<double> value_upper<double>(const Payoff&, bool);
template StoppingTime inner_optimizer<Rat>(const Payoff&, FamilySide, bool, const StoppingTime&,
                                           const Rat&);
template StoppingTime inner_optimizer<double>(const Payoff&, FamilySide, bool, const StoppingTime&,
                                              const double&);
template std::vector<Rat> family_at<Rat>(const FilteredSpace&, const std::vector<Rat>&,
                                         const StoppingTime&);
template std::vector<double> family_at<double>(const FilteredSpace&, const std::vector<double>&,
                                               const StoppingTime&);

}  // namespace stopgame
