#include "fcucb/problem.hpp"

#include <algorithm>
#include <string>

#include "fcucb/errors.hpp"

namespace fcucb {

ProblemInstance::ProblemInstance(std::vector<UnderlyingDistribution> arms,
                                 ActionSpace space, FilterModel filter)
    : arms_(std::move(arms)),
      space_(std::move(space)),
      filter_(std::move(filter)),
      reward_(space_, filter_) {
  if (space_.empty()) throw ConfigError("instance: empty action space");
  if (arms_.size() != space_.arm_count()) {
    throw ConfigError("instance: " + std::to_string(arms_.size()) +
                      " arms but the action space is over " +
                      std::to_string(space_.arm_count()));
  }
  if (!filter_.is_identity()) {
    for (std::size_t i = 0; i < arms_.size(); ++i) {
      if (!arms_[i].integer_valued()) {
        throw ConfigError("instance: arm " + std::to_string(i + 1) + " (" +
                          arms_[i].describe() +
                          ") is not integer valued; binomial filtering "
                          "needs integer outcomes");
      }
    }
  }
  for (CombinationId id = 0; id < space_.size(); ++id) {
    for (const auto& term : reward_.terms(id)) {
      gamma_min_ = std::min(gamma_min_, term.gamma);
    }
  }
  means_.reserve(arms_.size());
  for (const auto& a : arms_) means_.push_back(a.mean());
  gaps_ = compute_gaps(reward_, means_);
}

double ProblemInstance::max_mean() const {
  return *std::max_element(means_.begin(), means_.end());
}

}  // namespace fcucb
