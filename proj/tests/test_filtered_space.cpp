#include <doctest.h>

#include "stopgame/enumeration.hpp"
#include "stopgame/fixtures.hpp"
#include "stopgame/stopping_time.hpp"

using namespace stopgame;

namespace {

std::vector<Rat> rats(std::initializer_list<long> xs) {
  std::vector<Rat> out;
  for (long x : xs) out.push_back(Rat(x));
  return out;
}

}  // namespace

TEST_CASE("single-node space: one node, one leaf, horizon grid") {
  FilteredSpace s = fixtures::single_node();
  CHECK(s.node_count() == 1);
  CHECK(s.leaf_count() == 1);
  CHECK(s.horizon_index() == 0);
  CHECK(s.grid().horizon() == Rat(1));
}

TEST_CASE("deterministic chain on {0, 1/2, 1} is a three-node path") {
  FilteredSpace s = fixtures::chain(2);
  CHECK(s.node_count() == 3);
  CHECK(s.leaf_count() == 1);
  CHECK(s.depth(2) == 2);
  CHECK(s.path_prob(2) == Rat(1));
  CHECK(s.grid().at(1) == Rat(1, 2));
}

TEST_CASE("symmetric binary depth two: seven nodes, four leaves, bfs ids") {
  FilteredSpace s = fixtures::binary(2);
  CHECK(s.node_count() == 7);
  CHECK(s.leaf_count() == 4);
  for (int leaf : s.leaves()) CHECK(s.path_prob(leaf) == Rat(1, 4));
  // bfs numbering: children of the root are 1 and 2.
  auto ch = s.children(0);
  REQUIRE(ch.size() == 2);
  CHECK(ch[0] == 1);
  CHECK(ch[1] == 2);
  CHECK(s.ancestor_at(s.leaf_node(3), 1) == 2);
}

TEST_CASE("space validation names the offending node") {
  SpaceSpec spec;
  spec.grid = {Rat(0), Rat(1)};
  spec.nodes = {
      SpaceNodeSpec{0, 0, std::nullopt, std::nullopt},
      SpaceNodeSpec{1, 1, 0, Rat(1, 2)},
      SpaceNodeSpec{2, 1, 0, Rat(1, 3)},
  };
  CHECK_THROWS_AS(FilteredSpace::build(spec), ValidationError);

  SpaceSpec dangling = spec;
  dangling.nodes[2].parent = 99;
  CHECK_THROWS_AS(FilteredSpace::build(dangling), ValidationError);

  SpaceSpec short_leaf;
  short_leaf.grid = {Rat(0), Rat(1, 2), Rat(1)};
  short_leaf.nodes = {SpaceNodeSpec{0, 0, std::nullopt, std::nullopt},
                      SpaceNodeSpec{1, 1, 0, Rat(1)}};
  CHECK_THROWS_AS(FilteredSpace::build(short_leaf), ValidationError);
}

TEST_CASE("expectation: constants, symmetry, deterministic path") {
  FilteredSpace b2 = fixtures::binary(2);
  CHECK(expectation<Rat>(b2, rats({3, 3, 3, 3})) == Rat(3));
  CHECK(expectation<Rat>(b2, rats({1, 0, 0, 1})) == Rat(1, 2));

  FilteredSpace cex = fixtures::chain(2);
  CHECK(expectation<Rat>(cex, rats({7})) == Rat(7));
}

TEST_CASE("conditional expectation: terminal, root, and depth-one conditioning") {
  FilteredSpace b2 = fixtures::binary(2);
  const std::vector<Rat> x = rats({1, 0, 0, 1});

  const StoppingTime at_horizon = StoppingTime::constant(b2, 2);
  CHECK(conditional_expectation<Rat>(b2, x, at_horizon) == x);

  const StoppingTime at_root = StoppingTime::constant(b2, 0);
  CHECK(conditional_expectation<Rat>(b2, x, at_root) == std::vector<Rat>(4, Rat(1, 2)));

  const StoppingTime at_one = StoppingTime::constant(b2, 1);
  CHECK(conditional_expectation<Rat>(b2, x, at_one) == std::vector<Rat>(4, Rat(1, 2)));
}

TEST_CASE("tower property over every enumerated stopping time (exact)") {
  for (const auto& make : {fixtures::binary(2), fixtures::chain(2)}) {
    const FilteredSpace& space = make;
    StoppingTimeSet set = StoppingTimeSet::enumerate(space);
    // A fixed non-symmetric variable.
    std::vector<Rat> x;
    for (int ord = 0; ord < space.leaf_count(); ++ord) x.push_back(Rat(2 * ord - 1, 3));
    const Rat full = expectation<Rat>(space, x);
    for (std::size_t i = 0; i < set.size(); ++i) {
      CHECK(expectation<Rat>(space, conditional_expectation<Rat>(space, x, set[i])) == full);
    }
  }
}

TEST_CASE("conditional expectation is constant on every atom") {
  FilteredSpace b2 = fixtures::binary(2);
  std::vector<Rat> x = rats({5, -2, 7, 11});
  StoppingTimeSet set = StoppingTimeSet::enumerate(b2);
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto y = conditional_expectation<Rat>(b2, x, set[i]);
    for (int node : set[i].stop_nodes()) {
      for (int ord = b2.leaf_begin(node); ord < b2.leaf_end(node); ++ord) {
        CHECK(y[static_cast<std::size_t>(ord)] == y[static_cast<std::size_t>(b2.leaf_begin(node))]);
      }
    }
  }
}

TEST_CASE("stopping time canonical form and validation") {
  FilteredSpace b2 = fixtures::binary(2);

  // All-stop at root collapses to the constant 0.
  std::vector<uint8_t> all_stop(7, 1);
  CHECK(StoppingTime::from_labels(b2, all_stop) == StoppingTime::constant(b2, 0));

  // Leaves-only stop is the constant horizon.
  std::vector<uint8_t> leaves_only = {0, 0, 0, 1, 1, 1, 1};
  CHECK(StoppingTime::from_labels(b2, leaves_only) == StoppingTime::constant(b2, 2));

  // Adapted mixed rule: stop at the left depth-1 node, at the horizon on the
  // right branch.
  std::vector<uint8_t> mixed = {0, 1, 0, 0, 0, 1, 1};
  StoppingTime st = StoppingTime::from_labels(b2, mixed);
  CHECK(st.value_index(0) == 1);
  CHECK(st.value_index(1) == 1);
  CHECK(st.value_index(2) == 2);
  CHECK(st.value_index(3) == 2);

  // A path that never stops is invalid.
  std::vector<uint8_t> hole = {0, 1, 0, 0, 0, 1, 0};
  CHECK_THROWS_AS(StoppingTime::from_labels(b2, hole), ValidationError);

  // Non-adapted leaf depths are rejected.
  CHECK_THROWS_AS(StoppingTime::from_leaf_depths(b2, {1, 2, 2, 2}), ValidationError);
}

TEST_CASE("meet and join are pathwise min and max and stay valid") {
  FilteredSpace cex = fixtures::chain(2);
  const StoppingTime half = StoppingTime::constant(cex, 1);
  const StoppingTime horizon = StoppingTime::constant(cex, 2);
  CHECK(st_meet(half, horizon) == half);
  CHECK(st_join(half, horizon) == horizon);
  CHECK(st_meet(half, half) == half);

  for (const FilteredSpace& space : {fixtures::binary(2), fixtures::binary(3), fixtures::chain(3)}) {
    StoppingTimeSet set = StoppingTimeSet::enumerate(space);
    for (std::size_t i = 0; i < set.size(); ++i) {
      for (std::size_t j = i; j < set.size(); ++j) {
        const StoppingTime m = st_meet(set[i], set[j]);
        const StoppingTime x = st_join(set[i], set[j]);
        CHECK(set.index_of(m).has_value());
        CHECK(set.index_of(x).has_value());
        for (int ord = 0; ord < space.leaf_count(); ++ord) {
          CHECK(m.value_index(ord) == std::min(set[i].value_index(ord), set[j].value_index(ord)));
          CHECK(x.value_index(ord) == std::max(set[i].value_index(ord), set[j].value_index(ord)));
        }
      }
    }
  }
}

TEST_CASE("strict-future membership: horizon convention and ordering") {
  FilteredSpace cex = fixtures::chain(2);
  const StoppingTime zero = StoppingTime::constant(cex, 0);
  const StoppingTime half = StoppingTime::constant(cex, 1);
  const StoppingTime horizon = StoppingTime::constant(cex, 2);
  CHECK(strictly_after(horizon, horizon));
  CHECK(strictly_after(half, zero));
  CHECK(!strictly_after(half, half));
  CHECK(!strictly_after(zero, half));

  // strictly_after implies pathwise >= with equality only at the horizon.
  FilteredSpace b2 = fixtures::binary(2);
  StoppingTimeSet set = StoppingTimeSet::enumerate(b2);
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = 0; j < set.size(); ++j) {
      if (!strictly_after(set[i], set[j])) continue;
      CHECK(pathwise_geq(set[i], set[j]));
      for (int ord = 0; ord < b2.leaf_count(); ++ord) {
        if (set[i].value_index(ord) == set[j].value_index(ord)) {
          CHECK(set[i].value_index(ord) == b2.horizon_index());
        }
      }
    }
  }
}

TEST_CASE("stopping-time counts follow the product recurrence on binary trees") {
  CHECK(StoppingTimeSet::enumerate(fixtures::binary(1)).size() == 2);
  CHECK(StoppingTimeSet::enumerate(fixtures::binary(2)).size() == 5);
  CHECK(StoppingTimeSet::enumerate(fixtures::binary(3), 30).size() == 26);
  CHECK(StoppingTimeSet::count(fixtures::binary(4)) == mpz_class(26) * 26 + 1);
  CHECK(StoppingTimeSet::enumerate(fixtures::single_node()).size() == 1);
  CHECK(StoppingTimeSet::enumerate(fixtures::chain(2)).size() == 3);
}

TEST_CASE("enumeration respects its cap with a capacity error") {
  CHECK_THROWS_AS(StoppingTimeSet::enumerate(fixtures::binary(3), 10), CapacityError);
}

TEST_CASE("enumeration is duplicate-free, canonical, and indexable") {
  FilteredSpace b2 = fixtures::binary(2);
  StoppingTimeSet set = StoppingTimeSet::enumerate(b2);
  for (std::size_t i = 0; i < set.size(); ++i) {
    CHECK(set.index_of(set[i]) == i);
    for (std::size_t j = i + 1; j < set.size(); ++j) CHECK(!(set[i] == set[j]));
  }
  CHECK(set[set.horizon_index()] == StoppingTime::constant(b2, 2));
}
