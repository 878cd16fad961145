#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "stopgame/oracle.hpp"

namespace stopgame::fixtures {

/// A space/payoff pair with shared ownership, so fixture batteries can be
/// passed around without lifetime bookkeeping.
struct Instance {
  std::string name;
  std::shared_ptr<const FilteredSpace> space;
  std::shared_ptr<const Payoff> payoff;
};

/// Degenerate one-node space: grid {1}, already at the horizon.
FilteredSpace single_node();

/// Deterministic chain on the uniform grid with `steps` intervals over [0,1]
/// (all branch probabilities 1; the three-node chain is the counterexample
/// space "cex").
FilteredSpace chain(int steps);

/// Symmetric binary tree of the given depth on the uniform grid, all branch
/// probabilities 1/2.
FilteredSpace binary(int depth);

/// The step payoff |f(s) - f(t)| with f = 0 up to mid-horizon and 1 after:
/// the payoff that splits the four game values as (1, 0, 0, 1) on the
/// three-node chain.
Payoff step_payoff(const FilteredSpace& space);

/// Deterministic random table payoff: every cell an independent rational in
/// [-8, 8] with denominator 1, 2, 3 or 4, drawn from a fixed engine so the
/// instance is identical across platforms and runs.
Payoff seeded_table_payoff(const FilteredSpace& space, uint64_t seed);

/// Seeded Lipschitz payoff: affine kernel a*s + b*t + c*x + d*y with small
/// rational coefficients, f a +/-step random walk, g a deterministic ramp
/// plus a second independent walk. The kernel table is tabulated over the
/// exact evaluation domain and carries L = max coefficient magnitude.
Payoff seeded_lipschitz_payoff(const FilteredSpace& space, uint64_t seed);

/// The hand-written type II tau-map on the three-node chain mapping early
/// stops to the horizon and late stops to mid-horizon; it forces payoff 1
/// against every plain stopping time under the step payoff and violates the
/// type I fixed-point property.
StrategyMap late_swap_tau_map(const StoppingTimeSet& set);

/// The fixture battery used by the verification suite: named deterministic
/// instances of depth <= 2 plus the degenerate space.
std::vector<Instance> standard_instances();

/// `count` seeded random table payoffs on the given base space (names carry
/// the seed).
std::vector<Instance> seeded_instances(const std::string& base, int count);

}  // namespace stopgame::fixtures
