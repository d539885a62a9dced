#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fcucb/types.hpp"

namespace fcucb {

/// Arms of one playable combination, sorted ascending, no duplicates.
using Combination = std::vector<ArmId>;

/// The set of playable combinations over k arms. Combinations are addressed
/// by their position in the list (CombinationId).
///
/// Invariants checked at construction: every combination is nonempty, uses
/// arms in [0, k), appears once, and every arm is covered by at least one
/// combination.
class ActionSpace {
 public:
  static constexpr std::size_t kDefaultCap = 1'000'000;

  /// Empty space; only useful as a placeholder.
  ActionSpace() = default;

  /// Each combination is canonicalised, but list order is kept as given.
  static ActionSpace from_list(std::size_t k, std::vector<Combination> combos);

  /// All nonempty subsets of size <= max_size, ordered by size and then
  /// lexicographically. Throws SizeError above `cap` combinations.
  static ActionSpace all_subsets_up_to(std::size_t k, std::size_t max_size,
                                       std::size_t cap = kDefaultCap);

  [[nodiscard]] std::size_t arm_count() const { return k_; }
  [[nodiscard]] std::size_t size() const { return combos_.size(); }
  [[nodiscard]] bool empty() const { return combos_.empty(); }

  [[nodiscard]] const Combination& operator[](CombinationId id) const {
    return combos_[id];
  }
  [[nodiscard]] std::span<const Combination> combinations() const {
    return combos_;
  }
  [[nodiscard]] PlayedCombination played(CombinationId id) const {
    return {id, combos_.at(id).size()};
  }

  [[nodiscard]] bool contains(CombinationId id, ArmId arm) const;
  [[nodiscard]] std::optional<CombinationId> find(Combination combo) const;

 private:
  ActionSpace(std::size_t k, std::vector<Combination> combos);

  std::size_t k_ = 0;
  std::vector<Combination> combos_;
};

/// Deterministic enumeration of the combinations.
std::vector<Combination> enumerate(const ActionSpace& space);

/// Number of nonempty subsets of {1..k} with size <= m, saturating at
/// SIZE_MAX.
std::size_t count_subsets_up_to(std::size_t k, std::size_t m);

}  // namespace fcucb
