#include "stopgame/enumeration.hpp"

#include <algorithm>

#include "stopgame/errors.hpp"

namespace stopgame {

namespace {

mpz_class count_from(const FilteredSpace& space, int node) {
  if (space.is_leaf(node)) return 1;
  mpz_class prod = 1;
  for (int c : space.children(node)) prod *= count_from(space, c);
  return prod + 1;
}

// All stop-depth assignments for the leaves under `node`, assuming stopping
// is still allowed at `node` or later.
void enumerate_from(const FilteredSpace& space, int node, std::vector<std::vector<int>>& out) {
  const int span = space.leaf_end(node) - space.leaf_begin(node);
  out.clear();
  out.push_back(std::vector<int>(static_cast<std::size_t>(span), space.depth(node)));  // stop here
  if (space.is_leaf(node)) return;
  // Continue: independent choice in each child subtree.
  std::vector<std::vector<std::vector<int>>> per_child;
  for (int c : space.children(node)) {
    per_child.emplace_back();
    enumerate_from(space, c, per_child.back());
  }
  std::vector<std::size_t> pick(per_child.size(), 0);
  while (true) {
    std::vector<int> combined;
    combined.reserve(static_cast<std::size_t>(span));
    for (std::size_t k = 0; k < per_child.size(); ++k) {
      const auto& part = per_child[k][pick[k]];
      combined.insert(combined.end(), part.begin(), part.end());
    }
    out.push_back(std::move(combined));
    std::size_t k = per_child.size();
    while (k > 0) {
      --k;
      if (++pick[k] < per_child[k].size()) break;
      pick[k] = 0;
      if (k == 0) return;
    }
  }
}

}  // namespace

mpz_class StoppingTimeSet::count(const FilteredSpace& space) { return count_from(space, 0); }

StoppingTimeSet StoppingTimeSet::enumerate(const FilteredSpace& space, std::size_t cap) {
  const mpz_class total = count(space);
  if (total > static_cast<unsigned long>(cap)) {
    throw CapacityError("stopping-time enumeration: " + total.get_str() +
                            " stopping times exceed the cap of " + std::to_string(cap),
                        cap);
  }
  std::vector<std::vector<int>> depth_vectors;
  enumerate_from(space, 0, depth_vectors);
  std::sort(depth_vectors.begin(), depth_vectors.end());
  depth_vectors.erase(std::unique(depth_vectors.begin(), depth_vectors.end()), depth_vectors.end());

  StoppingTimeSet set(&space);
  set.all_.reserve(depth_vectors.size());
  for (const auto& depths : depth_vectors) {
    set.all_.push_back(StoppingTime::from_leaf_depths(space, depths));
    set.index_.emplace(set.all_.back(), set.all_.size() - 1);
  }
  return set;
}

std::optional<std::size_t> StoppingTimeSet::index_of(const StoppingTime& st) const {
  auto it = index_.find(st);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t StoppingTimeSet::horizon_index() const {
  auto idx = index_of(StoppingTime::constant(*space_, space_->horizon_index()));
  return *idx;  // the horizon constant is always enumerated
}

}  // namespace stopgame
