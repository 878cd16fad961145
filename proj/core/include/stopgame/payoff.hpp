#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stopgame/stopping_time.hpp"

namespace stopgame {

enum class PayoffKind { kTable, kWProcess, kAbsDiffF, kAbsTimeDiff, kUtilitySpread };

const char* payoff_kind_name(PayoffKind kind);

/// One explicit table cell: payoff when the first player stops at grid index
/// s, the second at t, observed at `node` (whose depth must be max(s,t)).
struct PayoffTableEntry {
  int s = 0;
  int t = 0;
  int node = 0;  // internal (breadth-first) node id
  Rat value;
};

/// Tabulated kernel point for the Lipschitz payoff kind: value of
/// W(times[s], times[t], x, y).
struct WKernelEntry {
  int s = 0;
  int t = 0;
  Rat x;
  Rat y;
  Rat value;
};

struct WProcessSpec {
  std::vector<WKernelEntry> kernel;
  Rat lipschitz;
  // Adapted tables in node-id order. A proper prefix (all nodes up to some
  // depth) declares an earlier maturity; past it the process is extended
  // constantly along each path.
  std::vector<Rat> f_nodes;
  std::vector<Rat> g_nodes;
};

struct UtilitySpreadSpec {
  // Monotone nondecreasing breakpoints (x, u(x)), strictly increasing in x;
  // evaluated piecewise-linearly, constant beyond the ends.
  std::vector<std::pair<Rat, Rat>> utility;
  std::vector<Rat> f_nodes;
  std::vector<Rat> g_nodes;
};

/// Two-index payoff family U(s, t, node at s-or-t max). Values are exact
/// rationals regardless of the downstream arithmetic mode; every kind is
/// tabulated densely over its finite domain at build time, so evaluation is a
/// lookup, the bound is the max over the table, and measurability in the
/// stop-node information is structural. Immutable; shares the space.
class Payoff {
 public:
  static Payoff table(const FilteredSpace& space, const std::vector<PayoffTableEntry>& entries);
  static Payoff constant(const FilteredSpace& space, const Rat& c);
  /// U(s,t) = |f(times[s]) - f(times[t])| for a deterministic f given per
  /// grid index.
  static Payoff abs_diff_f(const FilteredSpace& space, const std::vector<Rat>& f_grid);
  /// U(s,t) = |times[s] - times[t]|.
  static Payoff abs_time_diff(const FilteredSpace& space);
  /// U(rho,tau) = W(rho, tau, f_rho, g_tau) with W Lipschitz (certificate
  /// stored, see lipschitz_certificate_violation).
  static Payoff w_process(const FilteredSpace& space, const WProcessSpec& spec);
  /// U(rho,tau) = utility(f_rho - g_tau) for a monotone tabulated utility.
  static Payoff utility_spread(const FilteredSpace& space, const UtilitySpreadSpec& spec);

  const FilteredSpace& space() const { return *space_; }
  PayoffKind kind() const { return kind_; }
  /// Requires depth(node) == max(s, t); total over that domain.
  const Rat& eval(int s_idx, int t_idx, int node) const;
  /// B with |U| <= B everywhere (max over the evaluation domain).
  const Rat& bound() const { return bound_; }
  const std::optional<Rat>& lipschitz() const { return lipschitz_; }

  const std::vector<WKernelEntry>& kernel() const { return kernel_; }

 private:
  Payoff(const FilteredSpace* space, PayoffKind kind) : space_(space), kind_(kind) {}

  void finalize();  // computes offsets usage checks and the bound
  std::size_t cell_index(int s_idx, int t_idx, int node) const;

  const FilteredSpace* space_;
  PayoffKind kind_;
  std::vector<Rat> dense_;        // all cells, node-major
  std::vector<std::size_t> offset_;  // node -> first cell
  Rat bound_;
  std::optional<Rat> lipschitz_;
  std::vector<WKernelEntry> kernel_;  // retained for the certificate check
};

/// Leaf-indexed values U(rho(w), tau(w), node at the later of the two stops).
template <Scalar T>
std::vector<T> eval_payoff(const Payoff& payoff, const StoppingTime& rho, const StoppingTime& tau);

/// eval_payoff(U, sigma, sigma).
template <Scalar T>
std::vector<T> diagonal(const Payoff& payoff, const StoppingTime& sigma);

/// Per-node diagonal values U(d, d, node).
template <Scalar T>
std::vector<T> diagonal_per_node(const Payoff& payoff);

/// For Lipschitz payoffs: checks |v1 - v2| <= L (|s1-s2| + |t1-t2| + |x1-x2|
/// + |y1-y2|) over all pairs of tabulated kernel points (times, not indices).
/// Returns a description of the first violated pair, or nullopt when the
/// certificate holds (and for non-Lipschitz kinds).
std::optional<std::string> lipschitz_certificate_violation(const Payoff& payoff);

}  // namespace stopgame
