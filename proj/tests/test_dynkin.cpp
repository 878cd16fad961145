#include <doctest.h>

#include "stopgame/dynkin.hpp"
#include "stopgame/fixtures.hpp"

using namespace stopgame;

namespace {

struct FamilyBundle {
  std::vector<Rat> lower, lower_strict, upper, upper_strict;
};

FamilyBundle families(const Payoff& payoff) {
  return FamilyBundle{value_lower<Rat>(payoff, false).values, value_lower<Rat>(payoff, true).values,
                      value_upper<Rat>(payoff, false).values, value_upper<Rat>(payoff, true).values};
}

bool nodewise_leq(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b[i] < a[i]) return false;
  }
  return true;
}

std::vector<DynkinSpec<Rat>> variant_specs(const FamilyBundle& f) {
  std::vector<DynkinSpec<Rat>> out;
  for (const auto* lo : {&f.lower, &f.lower_strict}) {
    for (const auto* up : {&f.upper, &f.upper_strict}) {
      for (TieRule tie : {TieRule::kLow, TieRule::kHigh}) {
        out.push_back(DynkinSpec<Rat>{*lo, *up, tie});
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("equal constant families stop immediately at the constant") {
  FilteredSpace b2 = fixtures::binary(2);
  std::vector<Rat> c(7, Rat(3));
  for (TieRule tie : {TieRule::kLow, TieRule::kHigh}) {
    DynkinSolution<Rat> sol = dynkin_closed_loop(b2, DynkinSpec<Rat>{c, c, tie});
    CHECK(sol.root_value == Rat(3));
    CHECK(sol.tau_star == StoppingTime::constant(b2, 0));
    CHECK(sol.rho_star == StoppingTime::constant(b2, 0));
  }
}

TEST_CASE("step payoff games on the chain: frozen roots") {
  FilteredSpace cex = fixtures::chain(2);
  Payoff u = fixtures::step_payoff(cex);
  FamilyBundle f = families(u);

  CHECK(dynkin_closed_loop(cex, DynkinSpec<Rat>{f.lower, f.upper, TieRule::kLow}).root_value ==
        Rat(0));
  // Strict lower against non-strict upper under the high tie: the bound that
  // pins the type-I upper game value at 1.
  CHECK(dynkin_closed_loop(cex, DynkinSpec<Rat>{f.lower_strict, f.upper, TieRule::kHigh})
            .root_value == Rat(1));
  CHECK(dynkin_open_loop(cex, DynkinSpec<Rat>{f.lower, f.upper, TieRule::kLow},
                         OpenLoopOrder::kInfSup) == Rat(0));
  CHECK(dynkin_open_loop(cex, DynkinSpec<Rat>{f.lower, f.upper, TieRule::kLow},
                         OpenLoopOrder::kSupInf) == Rat(0));
}

TEST_CASE("ordering violation is refused with a pointer to the open loop") {
  FilteredSpace cex = fixtures::chain(2);
  std::vector<Rat> lo = {Rat(1), Rat(0), Rat(0)};
  std::vector<Rat> up = {Rat(0), Rat(1), Rat(1)};
  CHECK_THROWS_AS(dynkin_closed_loop(cex, DynkinSpec<Rat>{lo, up, TieRule::kLow}),
                  OrderingViolationError);
  CHECK_NOTHROW(dynkin_open_loop(cex, DynkinSpec<Rat>{lo, up, TieRule::kLow},
                                 OpenLoopOrder::kInfSup));
}

TEST_CASE("weak duality holds for every variant on every fixture") {
  for (const auto& instance : fixtures::standard_instances()) {
    const FilteredSpace& space = *instance.space;
    for (const auto& spec : variant_specs(families(*instance.payoff))) {
      const Rat lo = dynkin_open_loop(space, spec, OpenLoopOrder::kSupInf);
      const Rat hi = dynkin_open_loop(space, spec, OpenLoopOrder::kInfSup);
      CHECK(lo <= hi);
    }
  }
}

TEST_CASE("closed loop equals both open-loop orders whenever ordered") {
  auto check_instance = [](const fixtures::Instance& instance) {
    const FilteredSpace& space = *instance.space;
    for (const auto& spec : variant_specs(families(*instance.payoff))) {
      if (!nodewise_leq(spec.lower, spec.upper)) continue;
      const Rat closed = dynkin_closed_loop(space, spec).root_value;
      CHECK(closed == dynkin_open_loop(space, spec, OpenLoopOrder::kInfSup));
      CHECK(closed == dynkin_open_loop(space, spec, OpenLoopOrder::kSupInf));
    }
  };
  for (const auto& instance : fixtures::standard_instances()) check_instance(instance);
  for (const auto& instance : fixtures::seeded_instances("b2", 20)) check_instance(instance);
}

TEST_CASE("tie monotonicity: paying the upper family on ties never lowers the value") {
  auto check_instance = [](const fixtures::Instance& instance) {
    const FilteredSpace& space = *instance.space;
    FamilyBundle f = families(*instance.payoff);
    for (const auto* lo : {&f.lower, &f.lower_strict}) {
      for (const auto* up : {&f.upper, &f.upper_strict}) {
        if (!nodewise_leq(*lo, *up)) continue;
        const Rat low_tie =
            dynkin_closed_loop(space, DynkinSpec<Rat>{*lo, *up, TieRule::kLow}).root_value;
        const Rat high_tie =
            dynkin_closed_loop(space, DynkinSpec<Rat>{*lo, *up, TieRule::kHigh}).root_value;
        CHECK(low_tie <= high_tie);
      }
    }
  };
  for (const auto& instance : fixtures::standard_instances()) check_instance(instance);
  for (const auto& instance : fixtures::seeded_instances("b2", 10)) check_instance(instance);
}

TEST_CASE("value bracketing between the two families") {
  FilteredSpace b2 = fixtures::binary(2);
  Payoff u = fixtures::seeded_table_payoff(b2, 13);
  FamilyBundle f = families(u);
  DynkinSolution<Rat> sol = dynkin_closed_loop(b2, DynkinSpec<Rat>{f.lower, f.upper, TieRule::kLow});
  for (int n = 0; n < b2.node_count(); ++n) {
    auto i = static_cast<std::size_t>(n);
    CHECK(f.lower[i] <= sol.value[i]);
    CHECK(sol.value[i] <= f.upper[i]);
  }
}

TEST_CASE("saddle pair survives a full deviation scan") {
  auto check_instance = [](const fixtures::Instance& instance) {
    const FilteredSpace& space = *instance.space;
    FamilyBundle f = families(*instance.payoff);
    for (TieRule tie : {TieRule::kLow, TieRule::kHigh}) {
      DynkinSpec<Rat> spec{f.lower, f.upper, tie};
      SaddleResult<Rat> res = dynkin_saddle(space, spec);
      CHECK(res.certificate.ok);
      CHECK(res.certificate.best_tau_deviation <= res.certificate.center);
      CHECK(res.certificate.center <= res.certificate.best_rho_deviation);
    }
  };
  for (const auto& instance : fixtures::standard_instances()) check_instance(instance);
  // The named random-table fixture: seed 42 on binary depth two.
  auto b2 = std::make_shared<const FilteredSpace>(fixtures::binary(2));
  Payoff u42 = fixtures::seeded_table_payoff(*b2, 42);
  FamilyBundle f = families(u42);
  SaddleResult<Rat> res = dynkin_saddle(*b2, DynkinSpec<Rat>{f.lower, f.upper, TieRule::kLow});
  CHECK(res.certificate.ok);
  // The chain fixture: stopping immediately is the saddle of the step game.
  FilteredSpace cex = fixtures::chain(2);
  Payoff step = fixtures::step_payoff(cex);
  FamilyBundle fs = families(step);
  SaddleResult<Rat> cex_res = dynkin_saddle(cex, DynkinSpec<Rat>{fs.lower, fs.upper, TieRule::kLow});
  CHECK(cex_res.tau_star == StoppingTime::constant(cex, 0));
  CHECK(cex_res.certificate.center == Rat(0));
}

TEST_CASE("jj decomposition: constants, chain, and closed-loop cross-checks") {
  FilteredSpace b2 = fixtures::binary(2);
  std::vector<Rat> c(7, Rat(4));
  JJResult<Rat> constant = jj_decomposition(b2, c, c);
  CHECK(constant.value == Rat(4));

  FilteredSpace cex = fixtures::chain(2);
  Payoff step = fixtures::step_payoff(cex);
  FamilyBundle f = families(step);
  JJResult<Rat> res = jj_decomposition(cex, f.lower, f.upper);
  CHECK(res.value == Rat(0));
  CHECK(res.iterations < 30);

  auto check_instance = [](const fixtures::Instance& instance) {
    const FilteredSpace& space = *instance.space;
    FamilyBundle fam = families(*instance.payoff);
    const Rat closed =
        dynkin_closed_loop(space, DynkinSpec<Rat>{fam.lower, fam.upper, TieRule::kLow}).root_value;
    JJResult<Rat> jj = jj_decomposition(space, fam.lower, fam.upper);
    CHECK(jj.value == closed);
    // Both families are nonnegative supermartingales.
    for (int n = 0; n < space.node_count(); ++n) {
      auto i = static_cast<std::size_t>(n);
      CHECK(Rat(0) <= jj.j[i]);
      CHECK(Rat(0) <= jj.j_prime[i]);
      if (!space.is_leaf(n)) {
        Rat cont_j(0), cont_jp(0);
        for (int ch : space.children(n)) {
          cont_j += space.branch_prob(ch) * jj.j[static_cast<std::size_t>(ch)];
          cont_jp += space.branch_prob(ch) * jj.j_prime[static_cast<std::size_t>(ch)];
        }
        CHECK(cont_j <= jj.j[i]);
        CHECK(cont_jp <= jj.j_prime[i]);
      }
    }
  };
  for (const auto& instance : fixtures::standard_instances()) check_instance(instance);
  for (const auto& instance : fixtures::seeded_instances("b2", 20)) check_instance(instance);

  // The named cross-check seed.
  Payoff u7 = fixtures::seeded_table_payoff(b2, 7);
  FamilyBundle f7 = families(u7);
  CHECK(jj_decomposition(b2, f7.lower, f7.upper).value ==
        dynkin_closed_loop(b2, DynkinSpec<Rat>{f7.lower, f7.upper, TieRule::kLow}).root_value);
}

TEST_CASE("jj decomposition is shift-equivariant") {
  FilteredSpace b2 = fixtures::binary(2);
  Payoff u = fixtures::seeded_table_payoff(b2, 5);
  FamilyBundle f = families(u);
  const Rat base = jj_decomposition(b2, f.lower, f.upper).value;
  for (const Rat& c : {Rat(1), Rat(-3), Rat(7, 2)}) {
    auto lo = f.lower;
    auto up = f.upper;
    for (auto& v : lo) v += c;
    for (auto& v : up) v += c;
    CHECK(jj_decomposition(b2, lo, up).value == base + c);
  }
}

TEST_CASE("jj decomposition reports non-convergence with a residual") {
  // Families that disagree on the terminal layer cannot reach a fixed point.
  FilteredSpace cex = fixtures::chain(2);
  std::vector<Rat> lo = {Rat(0), Rat(0), Rat(0)};
  std::vector<Rat> up = {Rat(1), Rat(1), Rat(1)};
  CHECK_THROWS_AS(jj_decomposition(cex, lo, up), ConvergenceError);
}
