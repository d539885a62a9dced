#include "fcucb/reward.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fcucb/errors.hpp"

namespace fcucb {

double realized_reward(std::span<const double> y, const Combination& played) {
  if (played.empty() || y.size() != played.size()) {
    throw ContractViolation("realized_reward: need one observation per arm (" +
                            std::to_string(played.size()) + " arms, got " +
                            std::to_string(y.size()) + ")");
  }
  double total = 0.0;
  for (double v : y) total += v;
  return total;
}

LinearFilteredReward::LinearFilteredReward(const ActionSpace& space,
                                           const FilterModel& filter)
    : k_(space.arm_count()) {
  terms_.reserve(space.size());
  for (CombinationId id = 0; id < space.size(); ++id) {
    const auto& combo = space[id];
    const PlayedCombination played{id, combo.size()};
    std::vector<Term> row;
    row.reserve(combo.size());
    for (ArmId arm : combo) row.push_back({arm, filter.gamma(arm, played)});
    terms_.push_back(std::move(row));
  }
}

double LinearFilteredReward::operator()(std::span<const double> mu,
                                        CombinationId id) const {
  double total = 0.0;
  for (const auto& term : terms_[id]) total += term.gamma * mu[term.arm];
  return total;
}

double expected_reward(const ExpectedRewardFn& fn, std::span<const double> mu,
                       CombinationId id) {
  if (mu.size() != fn.arm_count()) {
    throw ContractViolation("expected_reward: mean vector has wrong length");
  }
  if (id >= fn.combination_count()) {
    throw ContractViolation("expected_reward: unknown combination id");
  }
  return fn(mu, id);
}

bool same_reward(double a, double b) {
  return std::abs(a - b) <=
         kOptimalityRelTol * std::max(std::abs(a), std::abs(b));
}

bool GapStats::is_optimal(CombinationId id) const {
  return std::binary_search(optimal_ids.begin(), optimal_ids.end(), id);
}

GapStats compute_gaps(const ExpectedRewardFn& fn, std::span<const double> mu) {
  const std::size_t m = fn.combination_count();
  if (m == 0) throw ConfigError("compute_gaps: empty action space");
  if (mu.size() != fn.arm_count()) {
    throw ContractViolation("compute_gaps: mean vector has wrong length");
  }
  std::vector<double> values(m);
  for (CombinationId id = 0; id < m; ++id) values[id] = fn(mu, id);

  GapStats gaps;
  gaps.opt = *std::max_element(values.begin(), values.end());
  std::optional<double> best_sub;
  std::optional<double> worst_sub;
  for (CombinationId id = 0; id < m; ++id) {
    if (same_reward(values[id], gaps.opt)) {
      gaps.optimal_ids.push_back(id);
      continue;
    }
    best_sub = best_sub ? std::max(*best_sub, values[id]) : values[id];
    worst_sub = worst_sub ? std::min(*worst_sub, values[id]) : values[id];
  }
  if (best_sub) {
    gaps.delta_min = gaps.opt - *best_sub;
    gaps.delta_max = gaps.opt - *worst_sub;
  }
  return gaps;
}

}  // namespace fcucb
