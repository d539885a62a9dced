#include "fcucb/oracle.hpp"

#include "fcucb/errors.hpp"

namespace fcucb {

CombinationId ExhaustiveOracle::argmax(std::span<const double> values,
                                       const ExpectedRewardFn& reward) const {
  const std::size_t m = reward.combination_count();
  if (m == 0) throw ConfigError("oracle: empty action space");
  CombinationId best = 0;
  double best_value = reward(values, 0);
  for (CombinationId id = 1; id < m; ++id) {
    const double v = reward(values, id);
    if (v > best_value) {
      best_value = v;
      best = id;
    }
  }
  return best;
}

CombinationId oracle_argmax(const ActionSpace& space,
                            std::span<const double> values,
                            const ExpectedRewardFn& reward) {
  if (space.empty()) throw ConfigError("oracle: empty action space");
  if (values.size() != space.arm_count()) {
    throw ContractViolation("oracle: index vector must have one entry per arm");
  }
  if (reward.combination_count() != space.size()) {
    throw ContractViolation("oracle: reward does not match the action space");
  }
  return ExhaustiveOracle{}.argmax(values, reward);
}

}  // namespace fcucb
