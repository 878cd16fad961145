#include "stopgame/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

namespace stopgame {

namespace {

// All-map feasibility bound, as in the refinement study.
bool oracle_feasible(std::size_t st_count, std::size_t map_cap) {
  double total = 1;
  for (std::size_t i = 0; i < st_count; ++i) {
    total *= static_cast<double>(st_count);
    if (total > static_cast<double>(map_cap)) return false;
  }
  return true;
}

struct Checker {
  std::vector<CheckResult> results;
  std::string prefix;

  void add(const std::string& name, bool pass, const std::string& detail = "") {
    results.push_back(CheckResult{prefix + name, pass, detail});
  }
  void skip(const std::string& name, const std::string& why) {
    results.push_back(CheckResult{prefix + name, true, "skipped: " + why});
  }
};

bool nodewise_leq(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b[i] < a[i]) return false;
  }
  return true;
}

}  // namespace

std::vector<CheckResult> verify_instance(const fixtures::Instance& instance, std::size_t st_cap,
                                         std::size_t map_cap) {
  const FilteredSpace& space = *instance.space;
  const Payoff& payoff = *instance.payoff;
  Checker out;
  out.prefix = instance.name + ": ";

  StoppingTimeSet set = StoppingTimeSet::enumerate(space, st_cap);

  // Structural: meet/join closure and the tower property over the enumeration.
  {
    bool closed = true;
    for (std::size_t i = 0; i < set.size() && closed; ++i) {
      for (std::size_t j = i; j < set.size() && closed; ++j) {
        closed = set.index_of(st_meet(set[i], set[j])).has_value() &&
                 set.index_of(st_join(set[i], set[j])).has_value();
      }
    }
    out.add("meet_join_closure", closed);

    std::vector<Rat> probe;
    for (int ord = 0; ord < space.leaf_count(); ++ord) probe.push_back(Rat(3 * ord + 1, 7));
    const Rat full = expectation<Rat>(space, probe);
    bool tower = true;
    for (std::size_t i = 0; i < set.size() && tower; ++i) {
      tower = expectation<Rat>(space, conditional_expectation<Rat>(space, probe, set[i])) == full;
    }
    out.add("tower_property", tower);
  }

  // Lipschitz certificate when the payoff carries one.
  if (payoff.lipschitz().has_value()) {
    auto violation = lipschitz_certificate_violation(payoff);
    out.add("lipschitz_certificate", !violation.has_value(), violation.value_or(""));
  }

  const std::vector<Rat> lower = value_lower<Rat>(payoff, false).values;
  const std::vector<Rat> lower_strict = value_lower<Rat>(payoff, true).values;
  const std::vector<Rat> upper = value_upper<Rat>(payoff, false).values;
  const std::vector<Rat> upper_strict = value_upper<Rat>(payoff, true).values;
  const std::vector<Rat> diag = diagonal_per_node<Rat>(payoff);

  {
    bool sandwich = true, splitting = true, bounded = true;
    for (int n = 0; n < space.node_count(); ++n) {
      auto i = static_cast<std::size_t>(n);
      sandwich = sandwich && lower[i] <= diag[i] && diag[i] <= upper[i];
      splitting = splitting && lower[i] == min(diag[i], lower_strict[i]) &&
                  upper[i] == max(diag[i], upper_strict[i]);
      bounded = bounded && abs(diag[i]) <= payoff.bound();
    }
    out.add("diagonal_sandwich", sandwich);
    out.add("splitting_identities", splitting);
    out.add("payoff_bound", bounded);
  }

  // Dynkin consistency for every ordered variant, plus tie monotonicity.
  {
    bool consistent = true, weak_duality = true;
    std::string detail;
    for (const auto* lo : {&lower, &lower_strict}) {
      for (const auto* up : {&upper, &upper_strict}) {
        Rat low_tie_root, high_tie_root;
        bool ordered = nodewise_leq(*lo, *up);
        for (TieRule tie : {TieRule::kLow, TieRule::kHigh}) {
          DynkinSpec<Rat> spec{*lo, *up, tie};
          const Rat inf_sup = open_loop_solve(set, spec, OpenLoopOrder::kInfSup).value;
          const Rat sup_inf = open_loop_solve(set, spec, OpenLoopOrder::kSupInf).value;
          weak_duality = weak_duality && sup_inf <= inf_sup;
          if (ordered) {
            const Rat closed = dynkin_closed_loop(space, spec).root_value;
            if (closed != inf_sup || closed != sup_inf) {
              consistent = false;
              detail = "closed " + closed.str() + " vs inf_sup " + inf_sup.str() + " vs sup_inf " +
                       sup_inf.str();
            }
            (tie == TieRule::kLow ? low_tie_root : high_tie_root) = closed;
          }
        }
        if (ordered && high_tie_root < low_tie_root) {
          consistent = false;
          detail = "tie monotonicity violated";
        }
      }
    }
    out.add("dynkin_consistency", consistent, detail);
    out.add("weak_duality", weak_duality);
  }

  // Saddle scan and the J/J' decomposition against the closed loop.
  {
    SaddleResult<Rat> saddle = dynkin_saddle(space, DynkinSpec<Rat>{lower, upper, TieRule::kLow});
    out.add("saddle_certificate", saddle.certificate.ok);

    JJResult<Rat> jj = jj_decomposition(space, lower, upper);
    const Rat closed = dynkin_closed_loop(space, DynkinSpec<Rat>{lower, upper, TieRule::kLow}).root_value;
    out.add("jj_matches_closed_loop", jj.value == closed,
            "value " + jj.value.str() + ", closed " + closed.str() + ", iterations " +
                std::to_string(jj.iterations));
    bool supermartingale = true;
    for (int n = 0; n < space.node_count() && supermartingale; ++n) {
      auto i = static_cast<std::size_t>(n);
      supermartingale = Rat(0) <= jj.j[i] && Rat(0) <= jj.j_prime[i];
      if (!space.is_leaf(n)) {
        Rat cj(0), cjp(0);
        for (int c : space.children(n)) {
          cj += space.branch_prob(c) * jj.j[static_cast<std::size_t>(c)];
          cjp += space.branch_prob(c) * jj.j_prime[static_cast<std::size_t>(c)];
        }
        supermartingale = supermartingale && cj <= jj.j[i] && cjp <= jj.j_prime[i];
      }
    }
    out.add("jj_supermartingale", supermartingale);
  }

  // Constructions: strict anchors yield type I, non-strict type II, over all
  // anchors and both player sides.
  {
    bool strict_ok = true, loose_ok = true;
    for (std::size_t a = 0; a < set.size(); ++a) {
      for (bool tau_side : {false, true}) {
        StrategyMap strict = tau_side ? build_tau_map<Rat>(payoff, set[a], true)
                                      : build_rho_map<Rat>(payoff, set[a], true);
        strict_ok = strict_ok && !check_nonanticipativity(set, strict, NaType::kTypeI).has_value();
        StrategyMap loose = tau_side ? build_tau_map<Rat>(payoff, set[a], false)
                                     : build_rho_map<Rat>(payoff, set[a], false);
        loose_ok = loose_ok && !check_nonanticipativity(set, loose, NaType::kTypeII).has_value();
      }
    }
    out.add("construction_type_i", strict_ok);
    out.add("construction_type_ii", loose_ok);
  }

  // Exhaustive pieces.
  if (oracle_feasible(set.size(), map_cap)) {
    SandwichReport<Rat> report = sandwich_report<Rat>(payoff, st_cap, map_cap);
    for (const auto& status : report.statuses) {
      out.add("sandwich_" + status.name, status.pass, status.detail);
    }

    bool fixed_points = true;
    enumerate_strategy_maps(set, NaType::kTypeI, [&](const StrategyMap& map) {
      fixed_points = fixed_points && !fixed_point_check(set, map).has_value();
    }, map_cap);
    out.add("type_i_fixed_point", fixed_points);

    bool responses_ok = true;
    const Rat bound =
        open_loop_solve(set, DynkinSpec<Rat>{lower, upper_strict, TieRule::kLow}, OpenLoopOrder::kSupInf)
            .value;
    enumerate_strategy_maps(set, NaType::kTypeII, [&](const StrategyMap& map) {
      responses_ok = responses_ok && bound <= best_response_to_map<Rat>(payoff, map).value;
    }, map_cap);
    out.add("best_response_bound", responses_ok);
  } else {
    out.skip("sandwich_suite", "strategy-map enumeration over " + std::to_string(set.size()) +
                                   " stopping times exceeds the cap");
  }

  return out.results;
}

int count_failures(const std::vector<CheckResult>& checks) {
  int failures = 0;
  for (const CheckResult& c : checks) {
    if (!c.pass) ++failures;
  }
  return failures;
}

int configured_thread_count() {
  const char* env = std::getenv("STOPGAME_THREADS");
  if (env == nullptr) return 1;
  const int n = std::atoi(env);
  return n > 0 ? n : 1;
}

std::vector<CheckResult> builtin_verification_battery(std::size_t st_cap, std::size_t map_cap) {
  std::vector<fixtures::Instance> instances = fixtures::standard_instances();
  for (auto& instance : fixtures::seeded_instances("b1", 20)) {
    instances.push_back(std::move(instance));
  }

  std::vector<std::vector<CheckResult>> per_instance(instances.size());
  const int workers = std::min<int>(configured_thread_count(), static_cast<int>(instances.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < instances.size(); ++i) {
      per_instance[i] = verify_instance(instances[i], st_cap, map_cap);
    }
  } else {
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&]() {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= instances.size()) return;
          per_instance[i] = verify_instance(instances[i], st_cap, map_cap);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  std::vector<CheckResult> merged;
  for (const auto& chunk : per_instance) {
    merged.insert(merged.end(), chunk.begin(), chunk.end());
  }
  return merged;
}

}  // namespace stopgame
