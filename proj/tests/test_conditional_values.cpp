#include <doctest.h>

#include "stopgame/conditional_values.hpp"
#include "stopgame/enumeration.hpp"
#include "stopgame/fixtures.hpp"

using namespace stopgame;

namespace {

// Independent oracle: the family value at a node by direct enumeration over
// all stopping rules of its subtree (restrictions of full-space stopping
// times), no backward induction involved.
Rat family_value_by_enumeration(const Payoff& payoff, const StoppingTimeSet& set, int node,
                                FamilySide side, bool strict) {
  const FilteredSpace& space = payoff.space();
  const int d = space.depth(node);
  if (strict && space.is_leaf(node)) return payoff.eval(d, d, node);
  bool first = true;
  Rat best;
  for (std::size_t i = 0; i < set.size(); ++i) {
    bool admissible = true;
    for (int ord = space.leaf_begin(node); ord < space.leaf_end(node) && admissible; ++ord) {
      const int v = set[i].value_index(ord);
      admissible = strict ? v > d : v >= d;
    }
    if (!admissible) continue;
    Rat acc(0);
    for (int ord = space.leaf_begin(node); ord < space.leaf_end(node); ++ord) {
      const int v = set[i].value_index(ord);
      const int stop_node = space.ancestor_at(space.leaf_node(ord), v);
      const Rat& u = side == FamilySide::kLower ? payoff.eval(v, d, stop_node)
                                                : payoff.eval(d, v, stop_node);
      acc += space.path_prob(space.leaf_node(ord)) * u;
    }
    acc /= space.path_prob(node);
    if (first || (side == FamilySide::kLower ? acc < best : best < acc)) best = acc;
    first = false;
  }
  REQUIRE(!first);
  return best;
}

std::vector<Rat> rats(std::initializer_list<long> xs) {
  std::vector<Rat> out;
  for (long x : xs) out.push_back(Rat(x));
  return out;
}

}  // namespace

TEST_CASE("step payoff families on the three-node chain (frozen by enumeration)") {
  FilteredSpace cex = fixtures::chain(2);
  Payoff u = fixtures::step_payoff(cex);

  CHECK(value_lower<Rat>(u, false).values == rats({0, 0, 0}));
  // Strictly-later best reply: at the root the mid point still gives 0, at
  // mid-horizon only the horizon remains (payoff 1), at the horizon the
  // diagonal.
  CHECK(value_lower<Rat>(u, true).values == std::vector<Rat>{Rat(0), Rat(1), Rat(0)});
  CHECK(value_upper<Rat>(u, false).values == std::vector<Rat>{Rat(1), Rat(1), Rat(0)});
  CHECK(value_upper<Rat>(u, true).values == std::vector<Rat>{Rat(1), Rat(1), Rat(0)});
}

TEST_CASE("time-difference families on the three-node chain") {
  FilteredSpace cex = fixtures::chain(2);
  Payoff u = Payoff::abs_time_diff(cex);
  CHECK(value_lower<Rat>(u, false).values == rats({0, 0, 0}));
  CHECK(value_lower<Rat>(u, true).values == std::vector<Rat>{Rat(1, 2), Rat(1, 2), Rat(0)});
  CHECK(value_upper<Rat>(u, false).values == std::vector<Rat>{Rat(1), Rat(1, 2), Rat(0)});
  CHECK(value_upper<Rat>(u, true).values == std::vector<Rat>{Rat(1), Rat(1, 2), Rat(0)});
}

TEST_CASE("constant payoff has constant families in both variants") {
  FilteredSpace b2 = fixtures::binary(2);
  Payoff u = Payoff::constant(b2, Rat(7));
  for (bool strict : {false, true}) {
    for (const Rat& v : value_lower<Rat>(u, strict).values) CHECK(v == Rat(7));
    for (const Rat& v : value_upper<Rat>(u, strict).values) CHECK(v == Rat(7));
  }
}

TEST_CASE("families match the exhaustive subtree oracle on every fixture") {
  auto check_instance = [](const Payoff& payoff) {
    const FilteredSpace& space = payoff.space();
    StoppingTimeSet set = StoppingTimeSet::enumerate(space);
    for (FamilySide side : {FamilySide::kLower, FamilySide::kUpper}) {
      for (bool strict : {false, true}) {
        const auto family = side == FamilySide::kLower ? value_lower<Rat>(payoff, strict)
                                                       : value_upper<Rat>(payoff, strict);
        for (int n = 0; n < space.node_count(); ++n) {
          CHECK(family.values[static_cast<std::size_t>(n)] ==
                family_value_by_enumeration(payoff, set, n, side, strict));
        }
      }
    }
  };
  for (const auto& instance : fixtures::standard_instances()) {
    if (instance.space->node_count() > 7) continue;  // keep the oracle cheap
    check_instance(*instance.payoff);
  }
  for (const auto& instance : fixtures::seeded_instances("b2", 6)) check_instance(*instance.payoff);
}

TEST_CASE("diagonal sandwich and splitting identities") {
  auto check_instance = [](const Payoff& payoff) {
    const FilteredSpace& space = payoff.space();
    const auto lower = value_lower<Rat>(payoff, false).values;
    const auto lower_strict = value_lower<Rat>(payoff, true).values;
    const auto upper = value_upper<Rat>(payoff, false).values;
    const auto upper_strict = value_upper<Rat>(payoff, true).values;
    const auto diag = diagonal_per_node<Rat>(payoff);
    for (int n = 0; n < space.node_count(); ++n) {
      auto i = static_cast<std::size_t>(n);
      CHECK(lower[i] <= diag[i]);
      CHECK(diag[i] <= upper[i]);
      CHECK(lower[i] == min(diag[i], lower_strict[i]));
      CHECK(upper[i] == max(diag[i], upper_strict[i]));
    }
  };
  for (const auto& instance : fixtures::standard_instances()) check_instance(*instance.payoff);
  for (const auto& instance : fixtures::seeded_instances("b2", 20)) check_instance(*instance.payoff);
}

TEST_CASE("inner optimizer: immediate stop, forced step, argmax at the root") {
  FilteredSpace cex = fixtures::chain(2);
  Payoff u = fixtures::step_payoff(cex);

  StoppingTimeSet set = StoppingTimeSet::enumerate(cex);
  for (std::size_t i = 0; i < set.size(); ++i) {
    // The diagonal is zero and the family value is zero: stop immediately.
    CHECK(inner_optimizer<Rat>(u, FamilySide::kLower, false, set[i]) == set[i]);
  }

  const StoppingTime half = StoppingTime::constant(cex, 1);
  CHECK(inner_optimizer<Rat>(u, FamilySide::kLower, true, half) == StoppingTime::constant(cex, 2));

  const StoppingTime zero = StoppingTime::constant(cex, 0);
  CHECK(inner_optimizer<Rat>(u, FamilySide::kUpper, false, zero) == StoppingTime::constant(cex, 2));
}

TEST_CASE("inner optimizers attain the family value and respect strictness") {
  auto check_instance = [](const Payoff& payoff) {
    const FilteredSpace& space = payoff.space();
    StoppingTimeSet set = StoppingTimeSet::enumerate(space);
    for (FamilySide side : {FamilySide::kLower, FamilySide::kUpper}) {
      for (bool strict : {false, true}) {
        const auto family = side == FamilySide::kLower ? value_lower<Rat>(payoff, strict)
                                                       : value_upper<Rat>(payoff, strict);
        for (std::size_t i = 0; i < set.size(); ++i) {
          const StoppingTime opt = inner_optimizer<Rat>(payoff, side, strict, set[i]);
          CHECK((strict ? strictly_after(opt, set[i]) : pathwise_geq(opt, set[i])));
          const auto leafwise = side == FamilySide::kLower
                                    ? eval_payoff<Rat>(payoff, opt, set[i])
                                    : eval_payoff<Rat>(payoff, set[i], opt);
          const auto conditioned = conditional_expectation<Rat>(space, leafwise, set[i]);
          const auto family_leafwise = family_at<Rat>(space, family.values, set[i]);
          CHECK(conditioned == family_leafwise);
        }
      }
    }
  };
  for (const auto& instance : fixtures::standard_instances()) {
    if (instance.space->node_count() > 7) continue;
    check_instance(*instance.payoff);
  }
  for (const auto& instance : fixtures::seeded_instances("b2", 6)) check_instance(*instance.payoff);
}

TEST_CASE("relaxed inner optimizer stops within epsilon of optimal") {
  FilteredSpace cex = fixtures::chain(2);
  Payoff u = Payoff::abs_time_diff(cex);
  const StoppingTime root = StoppingTime::constant(cex, 0);

  // Exact upper optimizer from the root waits for the horizon (value 1).
  CHECK(inner_optimizer<Rat>(u, FamilySide::kUpper, false, root) ==
        StoppingTime::constant(cex, 2));
  // Relaxing by half a unit lets it stop a step early; the attained value
  // stays within epsilon of the family value.
  const StoppingTime relaxed =
      inner_optimizer<Rat>(u, FamilySide::kUpper, false, root, Rat(1, 2));
  CHECK(relaxed == StoppingTime::constant(cex, 1));
  const Rat attained = expectation<Rat>(cex, eval_payoff<Rat>(u, root, relaxed));
  const Rat family_value = value_upper<Rat>(u, false).values[0];
  CHECK(family_value - attained <= Rat(1, 2));

  // Zero epsilon is the default and keeps the attained optimizer.
  CHECK(inner_optimizer<Rat>(u, FamilySide::kUpper, false, root, Rat(0)) ==
        inner_optimizer<Rat>(u, FamilySide::kUpper, false, root));
}

TEST_CASE("float mode reproduces exact family values within tolerance") {
  FilteredSpace b2 = fixtures::binary(2);
  Payoff u = fixtures::seeded_table_payoff(b2, 4);
  const auto exact = value_lower<Rat>(u, true).values;
  const auto approx = value_lower<double>(u, true).values;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    CHECK(approx[i] == doctest::Approx(exact[i].to_double()).epsilon(1e-12));
  }
}
