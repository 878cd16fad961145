#include "stopgame/payoff.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace stopgame {

const char* payoff_kind_name(PayoffKind kind) {
  switch (kind) {
    case PayoffKind::kTable: return "table";
    case PayoffKind::kWProcess: return "w_process";
    case PayoffKind::kAbsDiffF: return "abs_diff_f";
    case PayoffKind::kAbsTimeDiff: return "abs_time_diff";
    case PayoffKind::kUtilitySpread: return "utility_spread";
  }
  return "?";
}

namespace {

// Cells of a node at depth d, in order: (0,d) .. (d,d), then (d,0) .. (d,d-1).
std::size_t cells_for_depth(int d) { return static_cast<std::size_t>(2 * d + 1); }

std::size_t pair_offset(int s_idx, int t_idx, int d) {
  if (t_idx == d) return static_cast<std::size_t>(s_idx);
  return static_cast<std::size_t>(d + 1 + t_idx);
}

// Adapted table lookup with constant extension past the table's maturity
// depth. `values` must cover all nodes up to some depth (a bfs id prefix).
class AdaptedTable {
 public:
  AdaptedTable(const FilteredSpace& space, const std::vector<Rat>& values, const char* name)
      : space_(&space), values_(&values) {
    if (values.empty() || values.size() > static_cast<std::size_t>(space.node_count())) {
      throw ValidationError(std::string(name) + ": table must cover a nonempty node prefix");
    }
    const int last = static_cast<int>(values.size()) - 1;
    maturity_depth_ = space.depth(last);
    // The prefix must end exactly at a depth boundary.
    if (last + 1 < space.node_count() && space.depth(last + 1) == maturity_depth_) {
      throw ValidationError(std::string(name) + ": table length does not end at a depth layer");
    }
  }

  const Rat& at(int node) const {
    if (node < static_cast<int>(values_->size())) return (*values_)[static_cast<std::size_t>(node)];
    return (*values_)[static_cast<std::size_t>(space_->ancestor_at(node, maturity_depth_))];
  }

 private:
  const FilteredSpace* space_;
  const std::vector<Rat>* values_;
  int maturity_depth_ = 0;
};

}  // namespace

std::size_t Payoff::cell_index(int s_idx, int t_idx, int node) const {
  const int d = space_->depth(node);
  if (std::max(s_idx, t_idx) != d) {
    throw ValidationError("payoff: evaluation at node whose depth is not max(s,t)");
  }
  return offset_[static_cast<std::size_t>(node)] + pair_offset(s_idx, t_idx, d);
}

const Rat& Payoff::eval(int s_idx, int t_idx, int node) const {
  return dense_[cell_index(s_idx, t_idx, node)];
}

void Payoff::finalize() {
  bound_ = Rat(0);
  for (const Rat& v : dense_) bound_ = max(bound_, abs(v));
}

namespace {

// Allocates the dense layout and fills it with fn(s, t, node).
template <class Fn>
void fill_dense(const FilteredSpace& space, std::vector<Rat>& dense,
                std::vector<std::size_t>& offset, Fn&& fn) {
  offset.resize(static_cast<std::size_t>(space.node_count()));
  std::size_t total = 0;
  for (int n = 0; n < space.node_count(); ++n) {
    offset[static_cast<std::size_t>(n)] = total;
    total += cells_for_depth(space.depth(n));
  }
  dense.resize(total);
  for (int n = 0; n < space.node_count(); ++n) {
    const int d = space.depth(n);
    for (int s = 0; s <= d; ++s) dense[offset[static_cast<std::size_t>(n)] + pair_offset(s, d, d)] = fn(s, d, n);
    for (int t = 0; t < d; ++t) dense[offset[static_cast<std::size_t>(n)] + pair_offset(d, t, d)] = fn(d, t, n);
  }
}

}  // namespace

Payoff Payoff::table(const FilteredSpace& space, const std::vector<PayoffTableEntry>& entries) {
  std::map<std::tuple<int, int, int>, Rat> cells;
  for (const auto& e : entries) {
    if (e.node < 0 || e.node >= space.node_count()) {
      throw ValidationError("payoff table: unknown node " + std::to_string(e.node), e.node);
    }
    const int d = space.depth(e.node);
    if (e.s < 0 || e.t < 0 || e.s > space.horizon_index() || e.t > space.horizon_index() ||
        std::max(e.s, e.t) != d) {
      throw ValidationError("payoff table: entry (" + std::to_string(e.s) + "," +
                                std::to_string(e.t) + ") does not match depth of node " +
                                std::to_string(e.node), e.node);
    }
    if (!cells.emplace(std::make_tuple(e.s, e.t, e.node), e.value).second) {
      throw ValidationError("payoff table: duplicate entry for node " + std::to_string(e.node), e.node);
    }
  }
  Payoff p(&space, PayoffKind::kTable);
  fill_dense(space, p.dense_, p.offset_, [&](int s, int t, int n) -> Rat {
    auto it = cells.find(std::make_tuple(s, t, n));
    if (it == cells.end()) {
      throw ValidationError("payoff table: missing entry (s=" + std::to_string(s) +
                                ",t=" + std::to_string(t) + ",node=" + std::to_string(n) + ")", n);
    }
    return it->second;
  });
  p.finalize();
  return p;
}

Payoff Payoff::constant(const FilteredSpace& space, const Rat& c) {
  Payoff p(&space, PayoffKind::kTable);
  fill_dense(space, p.dense_, p.offset_, [&](int, int, int) { return c; });
  p.finalize();
  return p;
}

Payoff Payoff::abs_diff_f(const FilteredSpace& space, const std::vector<Rat>& f_grid) {
  if (static_cast<int>(f_grid.size()) != space.grid().size()) {
    throw ValidationError("abs_diff_f: f must have one value per grid point");
  }
  Payoff p(&space, PayoffKind::kAbsDiffF);
  fill_dense(space, p.dense_, p.offset_, [&](int s, int t, int) {
    return abs(f_grid[static_cast<std::size_t>(s)] - f_grid[static_cast<std::size_t>(t)]);
  });
  p.finalize();
  return p;
}

Payoff Payoff::abs_time_diff(const FilteredSpace& space) {
  Payoff p(&space, PayoffKind::kAbsTimeDiff);
  fill_dense(space, p.dense_, p.offset_, [&](int s, int t, int) {
    return abs(space.grid().at(s) - space.grid().at(t));
  });
  p.finalize();
  return p;
}

Payoff Payoff::w_process(const FilteredSpace& space, const WProcessSpec& spec) {
  if (!(spec.lipschitz > Rat(0))) {
    throw ValidationError("w_process: Lipschitz constant must be positive");
  }
  AdaptedTable f(space, spec.f_nodes, "w_process f");
  AdaptedTable g(space, spec.g_nodes, "w_process g");
  std::map<std::tuple<int, int, Rat, Rat>, Rat> kernel;
  for (const auto& e : spec.kernel) {
    if (!kernel.emplace(std::make_tuple(e.s, e.t, e.x, e.y), e.value).second) {
      throw ValidationError("w_process: duplicate kernel entry");
    }
  }
  Payoff p(&space, PayoffKind::kWProcess);
  fill_dense(space, p.dense_, p.offset_, [&](int s, int t, int n) -> Rat {
    const Rat& x = f.at(space.ancestor_at(n, s));
    const Rat& y = g.at(space.ancestor_at(n, t));
    auto it = kernel.find(std::make_tuple(s, t, x, y));
    if (it == kernel.end()) {
      throw ValidationError("w_process: kernel table does not cover (s=" + std::to_string(s) +
                                ",t=" + std::to_string(t) + ",x=" + x.str() + ",y=" + y.str() + ")", n);
    }
    return it->second;
  });
  p.lipschitz_ = spec.lipschitz;
  p.kernel_ = spec.kernel;
  p.finalize();
  return p;
}

Payoff Payoff::utility_spread(const FilteredSpace& space, const UtilitySpreadSpec& spec) {
  if (spec.utility.empty()) throw ValidationError("utility_spread: empty utility table");
  for (std::size_t i = 1; i < spec.utility.size(); ++i) {
    if (!(spec.utility[i - 1].first < spec.utility[i].first)) {
      throw ValidationError("utility_spread: breakpoints must be strictly increasing in x");
    }
    if (spec.utility[i].second < spec.utility[i - 1].second) {
      throw ValidationError("utility_spread: utility must be monotone nondecreasing");
    }
  }
  AdaptedTable f(space, spec.f_nodes, "utility_spread f");
  AdaptedTable g(space, spec.g_nodes, "utility_spread g");
  auto utility_at = [&](const Rat& x) -> Rat {
    const auto& pts = spec.utility;
    if (x <= pts.front().first) return pts.front().second;
    if (x >= pts.back().first) return pts.back().second;
    for (std::size_t i = 1; i < pts.size(); ++i) {
      if (x <= pts[i].first) {
        const Rat& x0 = pts[i - 1].first;
        const Rat& x1 = pts[i].first;
        const Rat& u0 = pts[i - 1].second;
        const Rat& u1 = pts[i].second;
        return u0 + (u1 - u0) * (x - x0) / (x1 - x0);
      }
    }
    return pts.back().second;  // unreachable
  };
  Payoff p(&space, PayoffKind::kUtilitySpread);
  fill_dense(space, p.dense_, p.offset_, [&](int s, int t, int n) {
    return utility_at(f.at(space.ancestor_at(n, s)) - g.at(space.ancestor_at(n, t)));
  });
  p.finalize();
  return p;
}

template <Scalar T>
std::vector<T> eval_payoff(const Payoff& payoff, const StoppingTime& rho, const StoppingTime& tau) {
  const FilteredSpace& space = payoff.space();
  if (static_cast<int>(rho.labels().size()) != space.node_count() ||
      static_cast<int>(tau.labels().size()) != space.node_count()) {
    throw ValidationError("eval_payoff: stopping times do not match the payoff's space");
  }
  std::vector<T> out(static_cast<std::size_t>(space.leaf_count()));
  for (int ord = 0; ord < space.leaf_count(); ++ord) {
    const int s = rho.value_index(ord);
    const int t = tau.value_index(ord);
    const int node = space.ancestor_at(space.leaf_node(ord), std::max(s, t));
    out[static_cast<std::size_t>(ord)] = scalar_cast<T>(payoff.eval(s, t, node));
  }
  return out;
}

template <Scalar T>
std::vector<T> diagonal(const Payoff& payoff, const StoppingTime& sigma) {
  return eval_payoff<T>(payoff, sigma, sigma);
}

template <Scalar T>
std::vector<T> diagonal_per_node(const Payoff& payoff) {
  const FilteredSpace& space = payoff.space();
  std::vector<T> out(static_cast<std::size_t>(space.node_count()));
  for (int n = 0; n < space.node_count(); ++n) {
    const int d = space.depth(n);
    out[static_cast<std::size_t>(n)] = scalar_cast<T>(payoff.eval(d, d, n));
  }
  return out;
}

std::optional<std::string> lipschitz_certificate_violation(const Payoff& payoff) {
  if (!payoff.lipschitz().has_value()) return std::nullopt;
  const Rat& L = *payoff.lipschitz();
  const TimeGrid& grid = payoff.space().grid();
  const auto& ker = payoff.kernel();
  for (std::size_t i = 0; i < ker.size(); ++i) {
    for (std::size_t j = i + 1; j < ker.size(); ++j) {
      const Rat lhs = abs(ker[i].value - ker[j].value);
      const Rat rhs = L * (abs(grid.at(ker[i].s) - grid.at(ker[j].s)) +
                           abs(grid.at(ker[i].t) - grid.at(ker[j].t)) +
                           abs(ker[i].x - ker[j].x) + abs(ker[i].y - ker[j].y));
      if (lhs > rhs) {
        return "kernel entries " + std::to_string(i) + " and " + std::to_string(j) +
               " violate the Lipschitz bound: |" + ker[i].value.str() + " - " +
               ker[j].value.str() + "| > " + rhs.str();
      }
    }
  }
  return std::nullopt;
}

template std::vector<Rat> eval_payoff<Rat>(const Payoff&, const StoppingTime&, const StoppingTime&);
template std::vector<double> eval_payoff<double>(const Payoff&, const StoppingTime&, const StoppingTime&);
template std::vector<Rat> diagonal<Rat>(const Payoff&, const StoppingTime&);
template std::vector<double> diagonal<double>(const Payoff&, const StoppingTime&);
template std::vector<Rat> diagonal_per_node<Rat>(const Payoff&);
template std::vector<double> diagonal_per_node<double>(const Payoff&);

}  // namespace stopgame
