#include "fcucb/action_space.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <string>

#include "fcucb/errors.hpp"

namespace fcucb {
namespace {

std::string show(const Combination& c) {
  std::string s = "{";
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (j) s += ",";
    s += std::to_string(c[j] + 1);
  }
  return s + "}";
}

}  // namespace

ActionSpace::ActionSpace(std::size_t k, std::vector<Combination> combos)
    : k_(k), combos_(std::move(combos)) {}

ActionSpace ActionSpace::from_list(std::size_t k,
                                   std::vector<Combination> combos) {
  if (k == 0) throw ConfigError("action space: k must be positive");
  if (combos.empty()) throw ConfigError("action space: no combinations");
  std::set<Combination> seen;
  std::vector<bool> covered(k, false);
  for (auto& c : combos) {
    if (c.empty()) throw ConfigError("action space: empty combination");
    std::sort(c.begin(), c.end());
    if (std::adjacent_find(c.begin(), c.end()) != c.end()) {
      throw ConfigError("action space: repeated arm in " + show(c));
    }
    if (c.back() >= k) {
      throw ConfigError("action space: arm out of range in " + show(c));
    }
    if (!seen.insert(c).second) {
      throw ConfigError("action space: duplicate combination " + show(c));
    }
    for (ArmId a : c) covered[a] = true;
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (!covered[i]) {
      throw ConfigError("action space: arm " + std::to_string(i + 1) +
                        " is not in any combination");
    }
  }
  return ActionSpace(k, std::move(combos));
}

std::size_t count_subsets_up_to(std::size_t k, std::size_t m) {
  constexpr auto kMax = std::numeric_limits<std::size_t>::max();
  m = std::min(m, k);
  std::size_t total = 0;
  std::size_t binom = 1;  // C(k, 0)
  for (std::size_t j = 1; j <= m; ++j) {
    // C(k, j) = C(k, j-1) * (k - j + 1) / j, exact at every step.
    const std::size_t num = k - j + 1;
    if (binom > kMax / num) return kMax;
    binom = binom * num / j;
    if (total > kMax - binom) return kMax;
    total += binom;
  }
  return total;
}

ActionSpace ActionSpace::all_subsets_up_to(std::size_t k, std::size_t max_size,
                                           std::size_t cap) {
  if (k == 0) throw ConfigError("action space: k must be positive");
  if (max_size == 0) throw ConfigError("action space: max size must be >= 1");
  const std::size_t total = count_subsets_up_to(k, max_size);
  if (total > cap) {
    throw SizeError("action space: all subsets of size <= " +
                    std::to_string(max_size) + " over " + std::to_string(k) +
                    " arms exceeds the cap of " + std::to_string(cap));
  }
  std::vector<Combination> combos;
  combos.reserve(total);
  for (std::size_t size = 1; size <= std::min(k, max_size); ++size) {
    Combination c(size);
    for (std::size_t j = 0; j < size; ++j) c[j] = static_cast<ArmId>(j);
    while (true) {
      combos.push_back(c);
      // Advance to the next size-subset in lexicographic order.
      std::size_t j = size;
      while (j > 0 && c[j - 1] == k - size + (j - 1)) --j;
      if (j == 0) break;
      ++c[j - 1];
      for (std::size_t r = j; r < size; ++r) c[r] = c[r - 1] + 1;
    }
  }
  return ActionSpace(k, std::move(combos));
}

bool ActionSpace::contains(CombinationId id, ArmId arm) const {
  const auto& c = combos_.at(id);
  return std::binary_search(c.begin(), c.end(), arm);
}

std::optional<CombinationId> ActionSpace::find(Combination combo) const {
  std::sort(combo.begin(), combo.end());
  const auto it = std::find(combos_.begin(), combos_.end(), combo);
  if (it == combos_.end()) return std::nullopt;
  return static_cast<CombinationId>(it - combos_.begin());
}

std::vector<Combination> enumerate(const ActionSpace& space) {
  return {space.combinations().begin(), space.combinations().end()};
}

}  // namespace fcucb
