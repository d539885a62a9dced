#pragma once

#include <span>

#include "fcucb/action_space.hpp"
#include "fcucb/reward.hpp"

namespace fcucb {

/// Maximises an expected reward function over the action space for a given
/// vector of per-arm values (UCB indices or true means).
class CombinatorialOracle {
 public:
  virtual ~CombinatorialOracle() = default;

  [[nodiscard]] virtual CombinationId argmax(
      std::span<const double> values, const ExpectedRewardFn& reward) const = 0;
};

/// Evaluates every combination; ties go to the lowest id.
class ExhaustiveOracle final : public CombinatorialOracle {
 public:
  [[nodiscard]] CombinationId argmax(
      std::span<const double> values,
      const ExpectedRewardFn& reward) const override;
};

/// Checked exhaustive argmax. Throws ConfigError on an empty space.
CombinationId oracle_argmax(const ActionSpace& space,
                            std::span<const double> values,
                            const ExpectedRewardFn& reward);

}  // namespace fcucb
