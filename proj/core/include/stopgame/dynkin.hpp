#pragma once

#include <string>
#include <vector>

#include "stopgame/conditional_values.hpp"
#include "stopgame/enumeration.hpp"

namespace stopgame {

/// Who is paid when both players stop at once: kLow pays the lower family
/// (ties belong to the tau player's indicator), kHigh pays the upper family.
/// The two conventions coincide only in the refinement limit; at finite
/// resolution they are kept explicit and never silently identified.
enum class TieRule { kLow, kHigh };

enum class OpenLoopOrder { kInfSup, kSupInf };

const char* tie_rule_name(TieRule tie);
const char* open_loop_order_name(OpenLoopOrder order);

template <Scalar T>
struct DynkinSpec {
  std::vector<T> lower;  // per node
  std::vector<T> upper;  // per node
  TieRule tie = TieRule::kLow;
};

template <Scalar T>
struct DynkinSolution {
  std::vector<T> value;  // per node
  T root_value;
  StoppingTime tau_star;  // sup player's optimal rule
  StoppingTime rho_star;  // inf player's optimal rule
  std::vector<uint8_t> tau_region;  // value == lower (forced at leaves)
  std::vector<uint8_t> rho_region;  // value == upper (forced at leaves)
};

/// Doubly-reflected backward recursion: terminal layer pays the tie side,
/// interior value clamps the continuation into [lower, upper]. Requires
/// lower <= upper at every node; throws OrderingViolationError otherwise
/// (use dynkin_open_loop, which has no ordering requirement).
template <Scalar T>
DynkinSolution<T> dynkin_closed_loop(const FilteredSpace& space, const DynkinSpec<T>& spec);

/// E[ lower(tau-node) on {tau cmp rho} + upper(rho-node) elsewhere ], with
/// cmp = {tau <= rho} under kLow and {tau < rho} under kHigh.
template <Scalar T>
T open_loop_payoff(const FilteredSpace& space, const DynkinSpec<T>& spec, const StoppingTime& rho,
                   const StoppingTime& tau);

template <Scalar T>
struct OpenLoopResult {
  T value;
  std::size_t outer_witness;  // rho index for inf-sup, tau index for sup-inf
  std::size_t inner_witness;
};

/// Exact enumeration over all stopping-time pairs.
template <Scalar T>
OpenLoopResult<T> open_loop_solve(const StoppingTimeSet& set, const DynkinSpec<T>& spec,
                                  OpenLoopOrder order);

template <Scalar T>
T dynkin_open_loop(const FilteredSpace& space, const DynkinSpec<T>& spec, OpenLoopOrder order,
                   std::size_t st_cap = kDefaultStopTimeCap);

template <Scalar T>
struct SaddleCertificate {
  T best_tau_deviation;  // max over tau of E[R(rho*, tau)]
  T center;              // E[R(rho*, tau*)]
  T best_rho_deviation;  // min over rho of E[R(rho, tau*)]
  bool ok;               // deviation <= center <= deviation
};

template <Scalar T>
struct SaddleResult {
  StoppingTime rho_star;
  StoppingTime tau_star;
  SaddleCertificate<T> certificate;
};

/// Extracts the closed-loop stopping pair and verifies the saddle
/// inequalities against every enumerated deviation.
template <Scalar T>
SaddleResult<T> dynkin_saddle(const FilteredSpace& space, const DynkinSpec<T>& spec,
                              std::size_t st_cap = kDefaultStopTimeCap);

template <Scalar T>
struct JJResult {
  std::vector<T> j;        // nonnegative supermartingale family (shifted payoffs)
  std::vector<T> j_prime;  // likewise
  T value;                 // j(root) - j_prime(root) - shift: the game value
  int iterations;
  T shift;  // constant added to both families to keep the recursion nonnegative
};

/// Fixed point of the coupled Snell-sup system
///   J  = sup-Snell of (J' + lower_shifted),
///   J' = sup-Snell of (J  - upper_shifted),
/// computed by monotone iteration from zero (each round updates J first and
/// feeds the fresh J into J'; the round-lagged variant oscillates). Converges
/// only when the two families agree on the terminal layer, which holds for
/// every pair derived from one payoff. Rational mode iterates to the exact
/// fixed point; float mode stops when the change drops below 1e-12. Throws
/// ConvergenceError with the residual if the iteration cap (factor *
/// node count) is hit.
template <Scalar T>
JJResult<T> jj_decomposition(const FilteredSpace& space, const std::vector<T>& lower,
                             const std::vector<T>& upper, int max_iter_factor = 10);

}  // namespace stopgame
