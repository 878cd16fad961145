#include <doctest.h>

#include "stopgame/fixtures.hpp"
#include "stopgame/oracle.hpp"

using namespace stopgame;

TEST_CASE("map enumeration matches the standalone checker exactly") {
  for (const FilteredSpace& space : {fixtures::chain(2), fixtures::binary(1)}) {
    StoppingTimeSet set = StoppingTimeSet::enumerate(space);
    for (NaType type : {NaType::kTypeI, NaType::kTypeII}) {
      // Collect the enumerated tables.
      std::vector<std::vector<std::size_t>> enumerated;
      enumerate_strategy_maps(set, type, [&](const StrategyMap& m) {
        enumerated.push_back(m.table());
        StrategyMap copy = StrategyMap::from_table(set, m.table());
        CHECK(!check_nonanticipativity(set, copy, type).has_value());
      });
      // Walk the whole function space and compare membership.
      std::vector<std::vector<std::size_t>> expected;
      std::vector<std::size_t> table(set.size(), 0);
      while (true) {
        StrategyMap map = StrategyMap::from_table(set, table);
        if (!check_nonanticipativity(set, map, type).has_value()) expected.push_back(table);
        std::size_t k = table.size();
        bool done = true;
        while (k > 0) {
          --k;
          if (++table[k] < set.size()) {
            done = false;
            break;
          }
          table[k] = 0;
        }
        if (done) break;
      }
      CHECK(enumerated == expected);
    }
  }
}

TEST_CASE("type II enumeration includes the identity, type I excludes it") {
  FilteredSpace cex = fixtures::chain(2);
  StoppingTimeSet set = StoppingTimeSet::enumerate(cex);
  std::vector<std::size_t> identity(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) identity[i] = i;

  bool in_type2 = false, in_type1 = false;
  enumerate_strategy_maps(set, NaType::kTypeII,
                          [&](const StrategyMap& m) { in_type2 = in_type2 || m.table() == identity; });
  enumerate_strategy_maps(set, NaType::kTypeI,
                          [&](const StrategyMap& m) { in_type1 = in_type1 || m.table() == identity; });
  CHECK(in_type2);
  CHECK(!in_type1);
}

TEST_CASE("map enumeration respects its cap") {
  FilteredSpace b2 = fixtures::binary(2);
  StoppingTimeSet set = StoppingTimeSet::enumerate(b2);
  CHECK_THROWS_AS(enumerate_strategy_maps(set, NaType::kTypeII, [](const StrategyMap&) {}, 3),
                  CapacityError);
}

TEST_CASE("the step payoff splits the four game values as (1, 0, 0, 1)") {
  FilteredSpace cex = fixtures::chain(2);
  Payoff u = fixtures::step_payoff(cex);
  GameValues<Rat> g = brute_game_values<Rat>(u);
  CHECK(g.a_upper == Rat(1));
  CHECK(g.a_lower == Rat(0));
  CHECK(g.b_upper == Rat(0));
  CHECK(g.b_lower == Rat(1));
}

TEST_CASE("constant payoffs give four equal game values") {
  FilteredSpace b1 = fixtures::binary(1);
  Payoff u = Payoff::constant(b1, Rat(9, 4));
  GameValues<Rat> g = brute_game_values<Rat>(u);
  CHECK(g.a_upper == Rat(9, 4));
  CHECK(g.a_lower == Rat(9, 4));
  CHECK(g.b_upper == Rat(9, 4));
  CHECK(g.b_lower == Rat(9, 4));
}

TEST_CASE("time-difference game on uniform chains: upper type-I value equals the grid step") {
  for (int steps : {2, 4}) {
    FilteredSpace space = fixtures::chain(steps);
    Payoff u = Payoff::abs_time_diff(space);
    GameValues<Rat> g = brute_game_values<Rat>(u);
    CHECK(g.a_upper == Rat(1, steps));
    CHECK(g.a_lower == Rat(0));
    CHECK(g.b_upper == Rat(0));
  }
}

TEST_CASE("game value witnesses re-evaluate to the reported values") {
  auto check_instance = [](const fixtures::Instance& instance) {
    const Payoff& u = *instance.payoff;
    StoppingTimeSet set = StoppingTimeSet::enumerate(*instance.space);
    GameValues<Rat> g = brute_game_values<Rat>(u);
    CHECK(strategy_game_value<Rat>(u, StrategyMap::from_table(set, g.a_upper_map), MapRole::kRho,
                                   set) == g.a_upper);
    CHECK(strategy_game_value<Rat>(u, StrategyMap::from_table(set, g.a_lower_map), MapRole::kTau,
                                   set) == g.a_lower);
    CHECK(strategy_game_value<Rat>(u, StrategyMap::from_table(set, g.b_upper_map), MapRole::kRho,
                                   set) == g.b_upper);
    CHECK(strategy_game_value<Rat>(u, StrategyMap::from_table(set, g.b_lower_map), MapRole::kTau,
                                   set) == g.b_lower);
  };
  for (const auto& instance : fixtures::standard_instances()) {
    if (instance.space->node_count() > 3) continue;
    check_instance(instance);
  }
  for (const auto& instance : fixtures::seeded_instances("b1", 5)) check_instance(instance);
}

TEST_CASE("sandwich suite passes on the fixtures") {
  for (const auto& instance : fixtures::standard_instances()) {
    if (instance.space->node_count() > 7) continue;
    SandwichReport<Rat> report = sandwich_report<Rat>(*instance.payoff);
    for (const auto& status : report.statuses) {
      INFO(instance.name, " ", status.name, ": ", status.detail);
      CHECK(status.pass);
    }
  }
}

TEST_CASE("sandwich suite passes on twenty seeded depth-one instances") {
  for (const auto& instance : fixtures::seeded_instances("b1", 20)) {
    SandwichReport<Rat> report = sandwich_report<Rat>(*instance.payoff);
    INFO(instance.name);
    CHECK(report.all_pass);
  }
}

TEST_CASE("on the step counterexample S1 and S6 bind") {
  FilteredSpace cex = fixtures::chain(2);
  Payoff u = fixtures::step_payoff(cex);
  SandwichReport<Rat> report = sandwich_report<Rat>(u);
  CHECK(report.all_pass);
  CHECK(report.s1_binds);
  CHECK(report.d1 == Rat(1));
  CHECK(report.d6 == Rat(0));  // the diagonal bound pins a_lower at zero
  CHECK(report.games.a_lower == Rat(0));
  CHECK(report.construction_value == Rat(1));
}
