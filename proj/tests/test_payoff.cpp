#include <doctest.h>

#include <map>

#include "stopgame/enumeration.hpp"
#include "stopgame/fixtures.hpp"
#include "stopgame/payoff.hpp"

using namespace stopgame;

TEST_CASE("step payoff on the three-node chain") {
  FilteredSpace cex = fixtures::chain(2);
  Payoff u = fixtures::step_payoff(cex);
  CHECK(u.kind() == PayoffKind::kAbsDiffF);
  // node ids equal depths on the chain
  CHECK(u.eval(1, 2, 2) == Rat(1));
  CHECK(u.eval(0, 1, 1) == Rat(0));
  CHECK(u.eval(0, 2, 2) == Rat(1));
  CHECK(u.bound() == Rat(1));

  const StoppingTime half = StoppingTime::constant(cex, 1);
  const StoppingTime horizon = StoppingTime::constant(cex, 2);
  CHECK(eval_payoff<Rat>(u, half, horizon) == std::vector<Rat>{Rat(1)});
  CHECK(diagonal<Rat>(u, half) == std::vector<Rat>{Rat(0)});
}

TEST_CASE("absolute time difference payoff") {
  FilteredSpace cex = fixtures::chain(2);
  Payoff u = Payoff::abs_time_diff(cex);
  CHECK(u.eval(0, 2, 2) == Rat(1));
  CHECK(u.eval(1, 1, 1) == Rat(0));
  CHECK(u.eval(2, 1, 2) == Rat(1, 2));
  CHECK(u.bound() == Rat(1));
  // The diagonal vanishes for every stopping time.
  StoppingTimeSet set = StoppingTimeSet::enumerate(cex);
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (const Rat& v : diagonal<Rat>(u, set[i])) CHECK(v == Rat(0));
  }
}

TEST_CASE("constant payoff has its bound and diagonal everywhere") {
  FilteredSpace b2 = fixtures::binary(2);
  Payoff u = Payoff::constant(b2, Rat(5));
  CHECK(u.bound() == Rat(5));
  StoppingTimeSet set = StoppingTimeSet::enumerate(b2);
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = 0; j < set.size(); ++j) {
      for (const Rat& v : eval_payoff<Rat>(u, set[i], set[j])) CHECK(v == Rat(5));
    }
  }
}

TEST_CASE("table payoff rejects holes, duplicates, and misplaced entries") {
  FilteredSpace cex = fixtures::chain(2);
  std::vector<PayoffTableEntry> entries;
  for (int n = 0; n < cex.node_count(); ++n) {
    const int d = cex.depth(n);
    for (int s = 0; s <= d; ++s) entries.push_back({s, d, n, Rat(s + d)});
    for (int t = 0; t < d; ++t) entries.push_back({d, t, n, Rat(d - t)});
  }
  CHECK_NOTHROW(Payoff::table(cex, entries));

  auto missing = entries;
  missing.pop_back();
  CHECK_THROWS_AS(Payoff::table(cex, missing), ValidationError);

  auto duplicated = entries;
  duplicated.push_back(duplicated.front());
  CHECK_THROWS_AS(Payoff::table(cex, duplicated), ValidationError);

  auto misplaced = entries;
  misplaced.push_back({0, 0, 2, Rat(1)});  // node 2 has depth 2, not max(0,0)
  CHECK_THROWS_AS(Payoff::table(cex, misplaced), ValidationError);
}

TEST_CASE("payoff values are bounded and measurable at the later stop") {
  auto b2 = std::make_shared<const FilteredSpace>(fixtures::binary(2));
  StoppingTimeSet set = StoppingTimeSet::enumerate(*b2);
  for (uint64_t seed : {0ull, 1ull, 2ull}) {
    Payoff u = fixtures::seeded_table_payoff(*b2, seed);
    for (std::size_t i = 0; i < set.size(); ++i) {
      for (std::size_t j = 0; j < set.size(); ++j) {
        const auto values = eval_payoff<Rat>(u, set[i], set[j]);
        std::map<int, Rat> per_atom;
        for (int ord = 0; ord < b2->leaf_count(); ++ord) {
          CHECK(abs(values[static_cast<std::size_t>(ord)]) <= u.bound());
          const int d = std::max(set[i].value_index(ord), set[j].value_index(ord));
          const int atom = b2->ancestor_at(b2->leaf_node(ord), d);
          auto [it, inserted] = per_atom.emplace(atom, values[static_cast<std::size_t>(ord)]);
          if (!inserted) CHECK(it->second == values[static_cast<std::size_t>(ord)]);
        }
      }
    }
  }
}

TEST_CASE("payoff evaluation depends only on the two indices and the atom") {
  FilteredSpace b2 = fixtures::binary(2);
  Payoff u = fixtures::seeded_table_payoff(b2, 9);
  StoppingTimeSet set = StoppingTimeSet::enumerate(b2);
  // Pathwise-equal argument pairs give identical leaf vectors.
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = 0; j < set.size(); ++j) {
      CHECK(eval_payoff<Rat>(u, set[i], set[j]) == eval_payoff<Rat>(u, set[i], set[j]));
    }
  }
}

TEST_CASE("lipschitz payoff carries a valid certificate") {
  FilteredSpace b2 = fixtures::binary(2);
  for (uint64_t seed : {0ull, 3ull, 7ull}) {
    Payoff u = fixtures::seeded_lipschitz_payoff(b2, seed);
    CHECK(u.kind() == PayoffKind::kWProcess);
    REQUIRE(u.lipschitz().has_value());
    CHECK(!lipschitz_certificate_violation(u).has_value());
  }
}

TEST_CASE("lipschitz certificate flags a broken kernel") {
  FilteredSpace cex = fixtures::chain(2);
  WProcessSpec spec;
  spec.lipschitz = Rat(1, 4);  // too small for a slope-one kernel
  spec.f_nodes = {Rat(0), Rat(1, 2), Rat(1)};
  spec.g_nodes = {Rat(0), Rat(0), Rat(0)};
  for (int n = 0; n < 3; ++n) {
    for (int s = 0; s <= n; ++s)
      spec.kernel.push_back({s, n, spec.f_nodes[static_cast<std::size_t>(s)], Rat(0),
                             spec.f_nodes[static_cast<std::size_t>(s)]});
    for (int t = 0; t < n; ++t)
      spec.kernel.push_back({n, t, spec.f_nodes[static_cast<std::size_t>(n)], Rat(0),
                             spec.f_nodes[static_cast<std::size_t>(n)]});
  }
  Payoff u = Payoff::w_process(cex, spec);
  CHECK(lipschitz_certificate_violation(u).has_value());
}

TEST_CASE("utility spread payoff: monotonicity validated, maturity extension applied") {
  FilteredSpace cex = fixtures::chain(2);
  UtilitySpreadSpec spec;
  spec.utility = {{Rat(-1), Rat(-1)}, {Rat(0), Rat(0)}, {Rat(2), Rat(1)}};
  spec.f_nodes = {Rat(0), Rat(1, 2)};  // matures at depth 1, extended constantly
  spec.g_nodes = {Rat(0), Rat(0), Rat(1, 2)};
  Payoff u = Payoff::utility_spread(cex, spec);
  // f at the horizon node is f at its depth-1 ancestor = 1/2.
  CHECK(u.eval(2, 0, 2) == u.eval(1, 0, 1));
  // Interpolation: utility(1/2 - 0) halfway between 0 and 2 -> 1/4.
  CHECK(u.eval(1, 1, 1) == Rat(1, 4));

  auto broken = spec;
  broken.utility[2].second = Rat(-2);
  CHECK_THROWS_AS(Payoff::utility_spread(cex, broken), ValidationError);

  auto bad_prefix = spec;
  bad_prefix.f_nodes = {Rat(0), Rat(1, 2), Rat(1), Rat(2)};
  CHECK_THROWS_AS(Payoff::utility_spread(cex, bad_prefix), ValidationError);
}
