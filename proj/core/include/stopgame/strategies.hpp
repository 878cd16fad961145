#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "stopgame/conditional_values.hpp"
#include "stopgame/dynkin.hpp"
#include "stopgame/enumeration.hpp"

namespace stopgame {

/// The two non-anticipativity dichotomies for maps from stopping times to
/// stopping times. For every argument pair and every leaf, exactly one of
///   outputs equal and <= (type I) / < (type II) the earlier argument, or
///   both outputs > (type I) / >= (type II) the earlier argument
/// must hold. Type I is the stricter class (it is contained in type II).
enum class NaType { kTypeI, kTypeII };

const char* na_type_name(NaType type);

/// Witness of a failed non-anticipativity check: the argument pair, the leaf,
/// and both clause evaluations.
struct NaCounterexample {
  std::size_t sigma1_index = 0;
  std::size_t sigma2_index = 0;
  int leaf_ordinal = 0;
  int out1 = 0, out2 = 0, arg_min = 0;
  std::string detail;
};

/// Total map from stopping times to stopping times. TABLE maps assign an
/// output index to every member of a canonical enumeration; RULE maps carry
/// an anchor and an inner-optimizer rule and evaluate pathwise as
///   anchor        where the argument is >= the anchor,
///   inner(arg)    where the argument is < the anchor,
/// memoizing results (thread-safe). Immutable after construction apart from
/// the memo and the declared type, which is only set after a successful
/// check.
class StrategyMap {
 public:
  using InnerRule = std::function<StoppingTime(const StoppingTime&)>;

  static StrategyMap from_table(const StoppingTimeSet& set, std::vector<std::size_t> table);
  static StrategyMap from_rule(StoppingTime anchor, InnerRule inner, bool strict_inner,
                               std::string label);

  /// Applies the map. TABLE maps reject arguments outside their enumeration.
  StoppingTime apply(const StoppingTime& arg) const;

  bool is_table() const { return set_ != nullptr; }
  const std::vector<std::size_t>& table() const { return table_; }
  const std::string& label() const { return label_; }
  std::optional<NaType> declared_type() const { return declared_type_; }
  void declare_type(NaType type) { declared_type_ = type; }
  const std::optional<StoppingTime>& anchor() const { return anchor_; }
  bool strict_inner() const { return strict_inner_; }

 private:
  StrategyMap() = default;

  const StoppingTimeSet* set_ = nullptr;  // TABLE backing
  std::vector<std::size_t> table_;

  std::optional<StoppingTime> anchor_;  // RULE backing
  InnerRule inner_;
  bool strict_inner_ = false;

  std::string label_;
  std::optional<NaType> declared_type_;

  struct Memo {
    std::mutex mutex;
    std::unordered_map<StoppingTime, StoppingTime, StoppingTimeHash> cache;
  };
  std::shared_ptr<Memo> memo_ = std::make_shared<Memo>();
};

/// Pairwise, pathwise check of the non-anticipativity dichotomy over the full
/// enumeration. Returns the first violation or nullopt; on success the map is
/// left with its declared type set.
std::optional<NaCounterexample> check_nonanticipativity(const StoppingTimeSet& set,
                                                        StrategyMap& map, NaType type);

struct FixedPointViolation {
  int leaf_ordinal = 0;
  int once = 0;   // map(horizon) at the leaf
  int twice = 0;  // map(map(horizon)) at the leaf
};

/// map(map(horizon)) must equal map(horizon) pathwise; guaranteed for type I
/// maps, genuinely violated by some type II maps.
std::optional<FixedPointViolation> fixed_point_check(const StoppingTimeSet& set,
                                                     const StrategyMap& map);

/// The threshold construction: anchor on {arg >= anchor}, lower-side inner
/// optimizer of the argument on {arg < anchor}. strict_inner=true yields a
/// type I map, strict_inner=false a type II map that may fail type I. On
/// finite spaces exact optimizers exist, so epsilon defaults to zero; the
/// slot lets refinement experiments pass inexact inner optimizers.
template <Scalar T>
StrategyMap build_rho_map(const Payoff& payoff, const StoppingTime& anchor, bool strict_inner,
                          const T& epsilon = T{});

/// Mirror with upper-side inner optimizers.
template <Scalar T>
StrategyMap build_tau_map(const Payoff& payoff, const StoppingTime& anchor, bool strict_inner,
                          const T& epsilon = T{});

enum class MapRole { kRho, kTau };

struct GameValueWitness {
  std::size_t stopping_time_index = 0;
};

/// Inner half of the strategy games: against a rho-map, the running player's
/// sup over plain stopping times of E[U(map(tau), tau)]; against a tau-map,
/// the inf over plain rho of E[U(rho, map(rho))].
template <Scalar T>
T strategy_game_value(const Payoff& payoff, const StrategyMap& map, MapRole role,
                      const StoppingTimeSet& set, GameValueWitness* witness = nullptr);

template <Scalar T>
struct BestResponse {
  StoppingTime response;
  T value;           // E[U(map(response), response)]
  StoppingTime anchor;
};

/// Best response of the tau player against a (type II) rho-map: the anchor
/// (supplied, or the sup-inf optimizer of the game with families lower
/// non-strict / upper strict, ties low) where it is not beaten by the map,
/// and the strict upper optimizer of map(anchor) elsewhere. Asserts the two
/// case identities pathwise and throws std::logic_error if they fail, which
/// indicates the map violates type II.
template <Scalar T>
BestResponse<T> best_response_to_map(const Payoff& payoff, const StrategyMap& map,
                                     std::optional<StoppingTime> anchor = std::nullopt,
                                     std::size_t st_cap = kDefaultStopTimeCap);

}  // namespace stopgame
