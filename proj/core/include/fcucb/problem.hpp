#pragma once

#include <vector>

#include "fcucb/action_space.hpp"
#include "fcucb/env_model.hpp"
#include "fcucb/reward.hpp"

namespace fcucb {

/// A complete CMAB-with-filtering instance: arm laws, action space, filter,
/// and the induced linear filtered reward. Immutable after construction.
class ProblemInstance {
 public:
  ProblemInstance(std::vector<UnderlyingDistribution> arms, ActionSpace space,
                  FilterModel filter);

  [[nodiscard]] std::size_t arm_count() const { return arms_.size(); }
  [[nodiscard]] const std::vector<UnderlyingDistribution>& arms() const {
    return arms_;
  }
  [[nodiscard]] const ActionSpace& space() const { return space_; }
  [[nodiscard]] const FilterModel& filter() const { return filter_; }
  [[nodiscard]] const LinearFilteredReward& reward() const { return reward_; }
  [[nodiscard]] const std::vector<double>& means() const { return means_; }
  [[nodiscard]] const GapStats& gaps() const { return gaps_; }
  [[nodiscard]] CombinationId best_combination() const {
    return gaps_.optimal_ids.front();
  }

  /// Smallest gamma_{i,S} over i in S, S in the action space.
  [[nodiscard]] double effective_gamma_min() const { return gamma_min_; }
  [[nodiscard]] double max_mean() const;

  /// f(L) = k L.
  [[nodiscard]] LinearSmoothness smoothness() const {
    return {static_cast<double>(arm_count())};
  }

 private:
  std::vector<UnderlyingDistribution> arms_;
  ActionSpace space_;
  FilterModel filter_;
  LinearFilteredReward reward_;
  std::vector<double> means_;
  GapStats gaps_;
  double gamma_min_ = 1.0;
};

}  // namespace fcucb
