#include "stopgame/dynkin.hpp"

#include <cmath>

namespace stopgame {

const char* tie_rule_name(TieRule tie) { return tie == TieRule::kLow ? "low" : "high"; }

const char* open_loop_order_name(OpenLoopOrder order) {
  return order == OpenLoopOrder::kInfSup ? "inf_sup" : "sup_inf";
}

namespace {

template <Scalar T>
void check_sizes(const FilteredSpace& space, const DynkinSpec<T>& spec) {
  if (static_cast<int>(spec.lower.size()) != space.node_count() ||
      static_cast<int>(spec.upper.size()) != space.node_count()) {
    throw ValidationError("dynkin: family size does not match node count");
  }
}

template <Scalar T>
StoppingTime first_binding(const FilteredSpace& space, const std::vector<uint8_t>& region) {
  std::vector<int> leaf_depths(static_cast<std::size_t>(space.leaf_count()), -1);
  auto descend = [&](auto&& self, int node) -> void {
    if (region[static_cast<std::size_t>(node)] != 0) {
      for (int ord = space.leaf_begin(node); ord < space.leaf_end(node); ++ord) {
        leaf_depths[static_cast<std::size_t>(ord)] = space.depth(node);
      }
      return;
    }
    for (int c : space.children(node)) self(self, c);
  };
  descend(descend, 0);
  return StoppingTime::from_leaf_depths(space, leaf_depths);
}

}  // namespace

template <Scalar T>
DynkinSolution<T> dynkin_closed_loop(const FilteredSpace& space, const DynkinSpec<T>& spec) {
  check_sizes(space, spec);
  for (int n = 0; n < space.node_count(); ++n) {
    if (spec.upper[static_cast<std::size_t>(n)] < spec.lower[static_cast<std::size_t>(n)]) {
      throw OrderingViolationError(
          "dynkin_closed_loop: lower > upper at node " + std::to_string(n) +
              "; the clamp recursion does not apply, use dynkin_open_loop",
          n);
    }
  }

  const int count = space.node_count();
  std::vector<T> value(static_cast<std::size_t>(count));
  std::vector<uint8_t> tau_region(static_cast<std::size_t>(count), 0);
  std::vector<uint8_t> rho_region(static_cast<std::size_t>(count), 0);

  // Children have larger ids: one reverse pass is a full backward induction.
  for (int n = count - 1; n >= 0; --n) {
    auto idx = static_cast<std::size_t>(n);
    if (space.is_leaf(n)) {
      value[idx] = spec.tie == TieRule::kLow ? spec.lower[idx] : spec.upper[idx];
      tau_region[idx] = 1;  // both players are out of time
      rho_region[idx] = 1;
      continue;
    }
    T cont = scalar_cast<T>(Rat(0));
    for (int c : space.children(n)) {
      cont += scalar_cast<T>(space.branch_prob(c)) * value[static_cast<std::size_t>(c)];
    }
    if (cont < spec.lower[idx]) {
      value[idx] = spec.lower[idx];
    } else if (spec.upper[idx] < cont) {
      value[idx] = spec.upper[idx];
    } else {
      value[idx] = cont;
    }
    tau_region[idx] = value[idx] == spec.lower[idx] ? 1 : 0;
    rho_region[idx] = value[idx] == spec.upper[idx] ? 1 : 0;
  }

  DynkinSolution<T> sol{std::move(value), T{}, first_binding<T>(space, tau_region),
                        first_binding<T>(space, rho_region), std::move(tau_region),
                        std::move(rho_region)};
  sol.root_value = sol.value[0];
  return sol;
}

template <Scalar T>
T open_loop_payoff(const FilteredSpace& space, const DynkinSpec<T>& spec, const StoppingTime& rho,
                   const StoppingTime& tau) {
  T acc = scalar_cast<T>(Rat(0));
  for (int ord = 0; ord < space.leaf_count(); ++ord) {
    const int r = rho.value_index(ord);
    const int t = tau.value_index(ord);
    const bool tau_first = spec.tie == TieRule::kLow ? t <= r : t < r;
    const T& side = tau_first ? spec.lower[static_cast<std::size_t>(tau.stop_node(ord))]
                              : spec.upper[static_cast<std::size_t>(rho.stop_node(ord))];
    acc += path_prob_as<T>(space, space.leaf_node(ord)) * side;
  }
  return acc;
}

template <Scalar T>
OpenLoopResult<T> open_loop_solve(const StoppingTimeSet& set, const DynkinSpec<T>& spec,
                                  OpenLoopOrder order) {
  const FilteredSpace& space = set.space();
  check_sizes(space, spec);
  const std::size_t m = set.size();
  // One outer index at a time; no m-by-m matrix is ever materialized.
  OpenLoopResult<T> res{scalar_cast<T>(Rat(0)), 0, 0};
  bool first_outer = true;
  for (std::size_t outer = 0; outer < m; ++outer) {
    T best{};
    std::size_t best_inner = 0;
    for (std::size_t inner = 0; inner < m; ++inner) {
      const T v = order == OpenLoopOrder::kInfSup
                      ? open_loop_payoff(space, spec, set[outer], set[inner])
                      : open_loop_payoff(space, spec, set[inner], set[outer]);
      const bool better = order == OpenLoopOrder::kInfSup ? best < v : v < best;
      if (inner == 0 || better) {
        best = v;
        best_inner = inner;
      }
    }
    const bool improves = order == OpenLoopOrder::kInfSup ? best < res.value : res.value < best;
    if (first_outer || improves) {
      res = {best, outer, best_inner};
      first_outer = false;
    }
  }
  return res;
}

template <Scalar T>
T dynkin_open_loop(const FilteredSpace& space, const DynkinSpec<T>& spec, OpenLoopOrder order,
                   std::size_t st_cap) {
  StoppingTimeSet set = StoppingTimeSet::enumerate(space, st_cap);
  return open_loop_solve(set, spec, order).value;
}

template <Scalar T>
SaddleResult<T> dynkin_saddle(const FilteredSpace& space, const DynkinSpec<T>& spec,
                              std::size_t st_cap) {
  DynkinSolution<T> sol = dynkin_closed_loop(space, spec);
  StoppingTimeSet set = StoppingTimeSet::enumerate(space, st_cap);
  const T center = open_loop_payoff(space, spec, sol.rho_star, sol.tau_star);
  T best_tau = center;
  T best_rho = center;
  for (std::size_t i = 0; i < set.size(); ++i) {
    const T dev_tau = open_loop_payoff(space, spec, sol.rho_star, set[i]);
    if (best_tau < dev_tau) best_tau = dev_tau;
    const T dev_rho = open_loop_payoff(space, spec, set[i], sol.tau_star);
    if (dev_rho < best_rho) best_rho = dev_rho;
  }
  const bool ok = !(center < best_tau) && !(best_rho < center);
  return SaddleResult<T>{sol.rho_star, sol.tau_star,
                         SaddleCertificate<T>{best_tau, center, best_rho, ok}};
}

namespace {

// One backward pass computes the sup-Snell envelope from every node at once.
template <Scalar T>
std::vector<T> snell_sup(const FilteredSpace& space, const std::vector<T>& reward) {
  std::vector<T> s(reward.size());
  for (int n = space.node_count() - 1; n >= 0; --n) {
    auto idx = static_cast<std::size_t>(n);
    if (space.is_leaf(n)) {
      s[idx] = reward[idx];
      continue;
    }
    T cont = scalar_cast<T>(Rat(0));
    for (int c : space.children(n)) {
      cont += scalar_cast<T>(space.branch_prob(c)) * s[static_cast<std::size_t>(c)];
    }
    s[idx] = cont < reward[idx] ? reward[idx] : cont;
  }
  return s;
}

template <Scalar T>
T max_abs_change(const std::vector<T>& a, const std::vector<T>& b) {
  T m = scalar_cast<T>(Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    const T d = scalar_abs<T>(a[i] - b[i]);
    if (m < d) m = d;
  }
  return m;
}

}  // namespace

template <Scalar T>
JJResult<T> jj_decomposition(const FilteredSpace& space, const std::vector<T>& lower,
                             const std::vector<T>& upper, int max_iter_factor) {
  if (static_cast<int>(lower.size()) != space.node_count() ||
      static_cast<int>(upper.size()) != space.node_count()) {
    throw ValidationError("jj_decomposition: family size does not match node count");
  }
  // Shift both families so the recursion operands stay nonnegative.
  T min_value = lower[0];
  T bound = scalar_cast<T>(Rat(0));
  for (const T& v : lower) {
    if (v < min_value) min_value = v;
    if (bound < scalar_abs<T>(v)) bound = scalar_abs<T>(v);
  }
  for (const T& v : upper) {
    if (v < min_value) min_value = v;
    if (bound < scalar_abs<T>(v)) bound = scalar_abs<T>(v);
  }
  const T zero = scalar_cast<T>(Rat(0));
  T shift = zero - min_value;
  if (shift < zero) shift = zero;
  shift += bound;

  std::vector<T> lo(lower), up(upper);
  for (auto& v : lo) v += shift;
  for (auto& v : up) v += shift;

  const std::size_t count = lower.size();
  std::vector<T> j(count, zero), jp(count, zero);
  const int max_iter = max_iter_factor * static_cast<int>(count) + 2;
  const double float_tol = 1e-12;

  std::vector<T> operand(count);
  int iterations = 0;
  while (true) {
    ++iterations;
    for (std::size_t i = 0; i < count; ++i) operand[i] = jp[i] + lo[i];
    std::vector<T> j_next = snell_sup(space, operand);
    for (std::size_t i = 0; i < count; ++i) operand[i] = j_next[i] - up[i];
    std::vector<T> jp_next = snell_sup(space, operand);

    T change = max_abs_change(j, j_next);
    {
      const T other = max_abs_change(jp, jp_next);
      if (change < other) change = other;
    }
    j = std::move(j_next);
    jp = std::move(jp_next);
    if constexpr (scalar_exact<T>()) {
      if (change == zero) break;
    } else {
      if (change < float_tol) break;
    }
    if (iterations >= max_iter) {
      throw ConvergenceError("jj_decomposition: no fixed point within " +
                                 std::to_string(max_iter) + " iterations",
                             scalar_str<T>(change));
    }
  }

  JJResult<T> res{std::move(j), std::move(jp), zero, iterations, shift};
  res.value = res.j[0] - res.j_prime[0] - shift;
  return res;
}

template DynkinSolution<Rat> dynkin_closed_loop<Rat>(const FilteredSpace&, const DynkinSpec<Rat>&);
template DynkinSolution<double> dynkin_closed_loop<double>(const FilteredSpace&,
                                                           const DynkinSpec<double>&);
template Rat open_loop_payoff<Rat>(const FilteredSpace&, const DynkinSpec<Rat>&,
                                   const StoppingTime&, const StoppingTime&);
template double open_loop_payoff<double>(const FilteredSpace&, const DynkinSpec<double>&,
                                         const StoppingTime&, const StoppingTime&);
template OpenLoopResult<Rat> open_loop_solve<Rat>(const StoppingTimeSet&, const DynkinSpec<Rat>&,
                                                  OpenLoopOrder);
template OpenLoopResult<double> open_loop_solve<double>(const StoppingTimeSet&,
                                                        const DynkinSpec<double>&, OpenLoopOrder);
template Rat dynkin_open_loop<Rat>(const FilteredSpace&, const DynkinSpec<Rat>&, OpenLoopOrder,
                                   std::size_t);
template double dynkin_open_loop<double>(const FilteredSpace&, const DynkinSpec<double>&,
                                         OpenLoopOrder, std::size_t);
template SaddleResult<Rat> dynkin_saddle<Rat>(const FilteredSpace&, const DynkinSpec<Rat>&,
                                              std::size_t);
template SaddleResult<double> dynkin_saddle<double>(const FilteredSpace&, const DynkinSpec<double>&,
                                                    std::size_t);
template JJResult<Rat> jj_decomposition<Rat>(const FilteredSpace&, const std::vector<Rat>&,
                                             const std::vector<Rat>&, int);
template JJResult<double> jj_decomposition<double>(const FilteredSpace&, const std::vector<double>&,
                                                   const std::vector<double>&, int);

}  // namespace stopgame
