#include "stopgame/fixtures.hpp"

#include <map>
#include <random>
#include <tuple>

namespace stopgame::fixtures {

namespace {

std::vector<Rat> uniform_grid(int steps) {
  std::vector<Rat> grid;
  grid.reserve(static_cast<std::size_t>(steps) + 1);
  for (int k = 0; k <= steps; ++k) grid.push_back(Rat(k, steps));
  return grid;
}

// Engine output mapped by modulo, not by distribution objects, so draws are
// identical across standard library implementations.
int draw_int(std::mt19937_64& eng, int lo, int hi) {
  const auto span = static_cast<uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(eng() % span);
}

}  // namespace

FilteredSpace single_node() {
  SpaceSpec spec;
  spec.grid = {Rat(1)};
  spec.nodes.push_back(SpaceNodeSpec{0, 0, std::nullopt, std::nullopt});
  return FilteredSpace::build(spec);
}

FilteredSpace chain(int steps) {
  SpaceSpec spec;
  spec.grid = uniform_grid(steps);
  for (int k = 0; k <= steps; ++k) {
    spec.nodes.push_back(k == 0 ? SpaceNodeSpec{0, 0, std::nullopt, std::nullopt}
                                : SpaceNodeSpec{k, k, k - 1, Rat(1)});
  }
  return FilteredSpace::build(spec);
}

FilteredSpace binary(int depth) {
  SpaceSpec spec;
  spec.grid = uniform_grid(depth);
  const int count = (1 << (depth + 1)) - 1;
  for (int i = 0; i < count; ++i) {
    int d = 0;
    while ((1 << (d + 1)) - 1 <= i) ++d;
    spec.nodes.push_back(i == 0 ? SpaceNodeSpec{0, 0, std::nullopt, std::nullopt}
                                : SpaceNodeSpec{i, d, (i - 1) / 2, Rat(1, 2)});
  }
  return FilteredSpace::build(spec);
}

Payoff step_payoff(const FilteredSpace& space) {
  const Rat mid = space.grid().horizon() / Rat(2);
  std::vector<Rat> f_grid;
  for (const Rat& t : space.grid().times) f_grid.push_back(t > mid ? Rat(1) : Rat(0));
  return Payoff::abs_diff_f(space, f_grid);
}

Payoff seeded_table_payoff(const FilteredSpace& space, uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::vector<PayoffTableEntry> entries;
  for (int n = 0; n < space.node_count(); ++n) {
    const int d = space.depth(n);
    auto draw = [&]() { return Rat(draw_int(eng, -8, 8), draw_int(eng, 1, 4)); };
    for (int s = 0; s <= d; ++s) entries.push_back(PayoffTableEntry{s, d, n, draw()});
    for (int t = 0; t < d; ++t) entries.push_back(PayoffTableEntry{d, t, n, draw()});
  }
  return Payoff::table(space, entries);
}

Payoff seeded_lipschitz_payoff(const FilteredSpace& space, uint64_t seed) {
  std::mt19937_64 eng(seed);
  const Rat a(draw_int(eng, -4, 4), 2);
  const Rat b(draw_int(eng, -4, 4), 2);
  const Rat c(draw_int(eng, -4, 4), 2);
  const Rat d(draw_int(eng, -4, 4), 2);

  // f and g: +/- one-grid-step random walks from 0 (slope-one paths, bounded
  // by the horizon).
  std::vector<Rat> f_nodes(static_cast<std::size_t>(space.node_count()), Rat(0));
  std::vector<Rat> g_nodes(static_cast<std::size_t>(space.node_count()), Rat(0));
  for (int n = 1; n < space.node_count(); ++n) {
    const Rat step = space.grid().at(space.depth(n)) - space.grid().at(space.depth(n) - 1);
    const int sf = draw_int(eng, 0, 1) == 0 ? -1 : 1;
    const int sg = draw_int(eng, 0, 1) == 0 ? -1 : 1;
    f_nodes[static_cast<std::size_t>(n)] = f_nodes[static_cast<std::size_t>(space.parent(n))] + Rat(sf) * step;
    g_nodes[static_cast<std::size_t>(n)] = g_nodes[static_cast<std::size_t>(space.parent(n))] + Rat(sg) * step;
  }

  auto kernel_value = [&](int s, int t, const Rat& x, const Rat& y) {
    return a * space.grid().at(s) + b * space.grid().at(t) + c * x + d * y;
  };
  std::map<std::tuple<int, int, Rat, Rat>, Rat> kernel;
  for (int n = 0; n < space.node_count(); ++n) {
    const int nd = space.depth(n);
    auto add = [&](int s, int t) {
      const Rat& x = f_nodes[static_cast<std::size_t>(space.ancestor_at(n, s))];
      const Rat& y = g_nodes[static_cast<std::size_t>(space.ancestor_at(n, t))];
      kernel.emplace(std::make_tuple(s, t, x, y), kernel_value(s, t, x, y));
    };
    for (int s = 0; s <= nd; ++s) add(s, nd);
    for (int t = 0; t < nd; ++t) add(nd, t);
  }

  WProcessSpec spec;
  for (const auto& [key, v] : kernel) {
    spec.kernel.push_back(WKernelEntry{std::get<0>(key), std::get<1>(key), std::get<2>(key),
                                       std::get<3>(key), v});
  }
  Rat lip = Rat(1, 2);
  for (const Rat& coef : {a, b, c, d}) lip = max(lip, abs(coef));
  spec.lipschitz = lip;
  spec.f_nodes = std::move(f_nodes);
  spec.g_nodes = std::move(g_nodes);
  return Payoff::w_process(space, spec);
}

StrategyMap late_swap_tau_map(const StoppingTimeSet& set) {
  const FilteredSpace& space = set.space();
  if (space.horizon_index() != 2 || space.node_count() != 3) {
    throw ValidationError("late_swap_tau_map: expects the three-node chain");
  }
  auto idx = [&](int k) { return *set.index_of(StoppingTime::constant(space, k)); };
  std::vector<std::size_t> table(set.size());
  table[idx(0)] = idx(2);
  table[idx(1)] = idx(2);
  table[idx(2)] = idx(1);
  return StrategyMap::from_table(set, table);
}

namespace {

Instance make_instance(std::string name, std::shared_ptr<const FilteredSpace> space,
                       Payoff payoff) {
  return Instance{std::move(name), std::move(space),
                  std::make_shared<const Payoff>(std::move(payoff))};
}

}  // namespace

std::vector<Instance> standard_instances() {
  std::vector<Instance> out;

  auto single = std::make_shared<const FilteredSpace>(single_node());
  out.push_back(make_instance("single_const", single, Payoff::constant(*single, Rat(5))));

  auto cex = std::make_shared<const FilteredSpace>(chain(2));
  out.push_back(make_instance("cex_step", cex, step_payoff(*cex)));
  out.push_back(make_instance("cex_abs_time", cex, Payoff::abs_time_diff(*cex)));

  auto chain4 = std::make_shared<const FilteredSpace>(chain(4));
  out.push_back(make_instance("chain4_abs_time", chain4, Payoff::abs_time_diff(*chain4)));

  auto b1 = std::make_shared<const FilteredSpace>(binary(1));
  out.push_back(make_instance("b1_step", b1, step_payoff(*b1)));

  auto b2 = std::make_shared<const FilteredSpace>(binary(2));
  out.push_back(make_instance("b2_step", b2, step_payoff(*b2)));
  out.push_back(make_instance("b2_abs_time", b2, Payoff::abs_time_diff(*b2)));

  UtilitySpreadSpec utility;
  utility.utility = {{Rat(-2), Rat(-3, 2)}, {Rat(0), Rat(0)}, {Rat(2), Rat(1)}};
  {
    std::mt19937_64 eng(11);
    std::vector<Rat> f(static_cast<std::size_t>(b2->node_count()), Rat(0));
    std::vector<Rat> g(static_cast<std::size_t>(b2->node_count()), Rat(0));
    for (int n = 1; n < b2->node_count(); ++n) {
      f[static_cast<std::size_t>(n)] =
          f[static_cast<std::size_t>(b2->parent(n))] + Rat(draw_int(eng, -2, 2), 2);
      g[static_cast<std::size_t>(n)] =
          g[static_cast<std::size_t>(b2->parent(n))] + Rat(draw_int(eng, -2, 2), 2);
    }
    utility.f_nodes = std::move(f);
    utility.g_nodes = std::move(g);
  }
  out.push_back(make_instance("b2_utility", b2, Payoff::utility_spread(*b2, utility)));

  out.push_back(make_instance("b2_lipschitz", b2, seeded_lipschitz_payoff(*b2, 3)));

  return out;
}

std::vector<Instance> seeded_instances(const std::string& base, int count) {
  std::shared_ptr<const FilteredSpace> space;
  if (base == "b1") {
    space = std::make_shared<const FilteredSpace>(binary(1));
  } else if (base == "b2") {
    space = std::make_shared<const FilteredSpace>(binary(2));
  } else if (base == "cex") {
    space = std::make_shared<const FilteredSpace>(chain(2));
  } else {
    throw ValidationError("seeded_instances: unknown base space " + base);
  }
  std::vector<Instance> out;
  for (int seed = 0; seed < count; ++seed) {
    out.push_back(make_instance(base + "_seed" + std::to_string(seed), space,
                                seeded_table_payoff(*space, static_cast<uint64_t>(seed))));
  }
  return out;
}

}  // namespace stopgame::fixtures
