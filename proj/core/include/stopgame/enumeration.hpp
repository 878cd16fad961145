#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "stopgame/stopping_time.hpp"

namespace stopgame {

inline constexpr std::size_t kDefaultStopTimeCap = 1000;
inline constexpr std::size_t kDefaultMapCap = 1000000;

/// The complete, duplicate-free set of stopping times on a space, in a
/// canonical deterministic order (ascending lexicographic per-leaf stop
/// depths). The finite stand-in for the full family of stopping rules;
/// everything exhaustive-oracle indexes into it.
class StoppingTimeSet {
 public:
  /// Throws CapacityError when the count would exceed `cap` (counted before
  /// materializing anything).
  static StoppingTimeSet enumerate(const FilteredSpace& space, std::size_t cap = kDefaultStopTimeCap);

  /// Exact count without materializing: product recurrence over the tree
  /// (1 at leaves, 1 + product over children elsewhere).
  static mpz_class count(const FilteredSpace& space);

  const FilteredSpace& space() const { return *space_; }
  std::size_t size() const { return all_.size(); }
  const StoppingTime& operator[](std::size_t i) const { return all_[i]; }
  const std::vector<StoppingTime>& all() const { return all_; }

  std::optional<std::size_t> index_of(const StoppingTime& st) const;

  /// Index of the constant stopping time at the horizon.
  std::size_t horizon_index() const;

 private:
  explicit StoppingTimeSet(const FilteredSpace* space) : space_(space) {}

  const FilteredSpace* space_;
  std::vector<StoppingTime> all_;
  std::unordered_map<StoppingTime, std::size_t, StoppingTimeHash> index_;
};

}  // namespace stopgame
