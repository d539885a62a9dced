#include "fcucb/policy.hpp"

#include <random>
#include <string>

#include "fcucb/errors.hpp"
#include "fcucb/oracle.hpp"

namespace fcucb {

std::vector<CombinationId> initialisation_schedule(const ActionSpace& space,
                                                   InitMode mode) {
  const std::size_t k = space.arm_count();
  std::vector<bool> covered(k, false);
  std::vector<CombinationId> schedule;
  for (ArmId arm = 0; arm < k; ++arm) {
    if (mode == InitMode::Skip && covered[arm]) continue;
    std::optional<CombinationId> pick;
    for (CombinationId id = 0; id < space.size(); ++id) {
      if (space.contains(id, arm)) {
        pick = id;
        break;
      }
    }
    if (!pick) {
      throw ConfigError("initialisation: arm " + std::to_string(arm + 1) +
                        " is not in any combination");
    }
    for (ArmId a : space[*pick]) covered[a] = true;
    schedule.push_back(*pick);
  }
  return schedule;
}

double ucb_index(const EstimatorSpec& spec, const RadiusParams& params,
                 const ObservationHistory& hist, Confidence level) {
  return estimate(spec, hist, level) +
         confidence_radius(params, hist.count(), level);
}

IndexPolicy::IndexPolicy(const ProblemInstance& instance,
                         IndexPolicyConfig config)
    : instance_(&instance),
      config_(std::move(config)),
      schedule_(initialisation_schedule(instance.space(), config_.init)),
      histories_(instance.arm_count()),
      indices_(instance.arm_count(), 0.0) {
  if (config_.radius) {
    params_ = *config_.radius;
  } else {
    params_ = certified_radius_params(config_.estimator);
  }
  validate(params_);
  if (std::holds_alternative<TruncatedSpec>(config_.estimator.kind()) &&
      !instance.filter().is_identity()) {
    throw ConfigError(
        "truncated empirical mean needs unfiltered feedback; use the "
        "filtered truncated mean with binomial filtering");
  }
}

std::string IndexPolicy::name() const {
  if (std::holds_alternative<EmpiricalSpec>(config_.estimator.kind())) {
    return "empirical_cucb";
  }
  return "robust_fcucb";
}

Phase IndexPolicy::phase() const {
  return t_ < schedule_.size() ? Phase::Initialisation : Phase::Loop;
}

std::vector<double> IndexPolicy::compute_indices(Round t) const {
  if (t <= schedule_.size()) {
    throw ContractViolation("compute_indices: round " + std::to_string(t) +
                            " is still in the initialisation phase");
  }
  const Confidence level = Confidence::at_round(t);
  std::vector<double> out(histories_.size());
  for (std::size_t i = 0; i < histories_.size(); ++i) {
    if (histories_[i].empty()) {
      throw ContractViolation("compute_indices: arm " + std::to_string(i + 1) +
                              " has not been observed");
    }
    out[i] = ucb_index(config_.estimator, params_, histories_[i], level);
  }
  return out;
}

CombinationId IndexPolicy::select(Round t, RandomStream&) {
  if (t != t_ + 1 || pending_) {
    throw ContractViolation("IndexPolicy: rounds must be consecutive");
  }
  CombinationId pick;
  if (t <= schedule_.size()) {
    pick = schedule_[t - 1];
  } else {
    indices_ = compute_indices(t);
    pick = ExhaustiveOracle{}.argmax(indices_, instance_->reward());
  }
  pending_ = pick;
  return pick;
}

void IndexPolicy::observe(Round t, CombinationId played,
                          std::span<const ArmId> arms,
                          std::span<const double> y,
                          std::span<const double> gamma) {
  if (!pending_ || *pending_ != played || t != t_ + 1) {
    throw ContractViolation("IndexPolicy: feedback for an unexpected round");
  }
  if (arms.size() != y.size() || arms.size() != gamma.size()) {
    throw ContractViolation("IndexPolicy: feedback length mismatch");
  }
  for (std::size_t j = 0; j < arms.size(); ++j) {
    histories_.at(arms[j]).record(y[j], gamma[j], t);
  }
  t_ = t;
  pending_.reset();
}

OptimalOraclePolicy::OptimalOraclePolicy(const ProblemInstance& instance)
    : best_(ExhaustiveOracle{}.argmax(instance.means(), instance.reward())) {}

CombinationId OptimalOraclePolicy::select(Round, RandomStream&) {
  return best_;
}

UniformRandomPolicy::UniformRandomPolicy(const ProblemInstance& instance)
    : size_(instance.space().size()) {}

CombinationId UniformRandomPolicy::select(Round, RandomStream& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, size_ - 1);
  return static_cast<CombinationId>(pick(rng));
}

std::unique_ptr<Policy> make_robust_fcucb(const ProblemInstance& instance,
                                          EstimatorSpec estimator,
                                          InitMode init) {
  return std::make_unique<IndexPolicy>(
      instance, IndexPolicyConfig{std::move(estimator), std::nullopt, init});
}

std::unique_ptr<Policy> make_empirical_cucb(const ProblemInstance& instance,
                                            RadiusParams radius,
                                            InitMode init) {
  return std::make_unique<IndexPolicy>(
      instance, IndexPolicyConfig{EstimatorSpec::empirical(), radius, init});
}

RoundLog step(Policy& policy, const ProblemInstance& instance, Round t,
              const StreamFactory& streams, std::uint64_t replication) {
  RoundLog log;
  log.t = t;
  auto policy_rng =
      streams.stream({replication, t, 0, StreamPurpose::Policy});
  log.combination = policy.select(t, policy_rng);
  if (log.combination >= instance.space().size()) {
    throw ContractViolation("step: policy chose an unknown combination");
  }

  const auto& combo = instance.space()[log.combination];
  const PlayedCombination played{log.combination, combo.size()};
  log.arms = combo;
  log.x.reserve(combo.size());
  log.y.reserve(combo.size());
  log.gamma.reserve(combo.size());
  for (ArmId arm : combo) {
    auto outcome_rng =
        streams.stream({replication, t, arm, StreamPurpose::Outcome});
    auto filter_rng =
        streams.stream({replication, t, arm, StreamPurpose::Filter});
    const double x = sample_true_outcome(instance.arms()[arm], outcome_rng);
    log.x.push_back(x);
    log.y.push_back(apply_filter(instance.filter(), x, arm, played, filter_rng));
    log.gamma.push_back(instance.filter().gamma(arm, played));
  }
  policy.observe(t, log.combination, log.arms, log.y, log.gamma);

  const auto& gaps = instance.gaps();
  log.realized_reward = realized_reward(log.y, combo);
  log.expected_reward = instance.reward()(instance.means(), log.combination);
  log.optimal = gaps.is_optimal(log.combination);
  log.instant_regret = log.optimal ? 0.0 : gaps.opt - log.expected_reward;
  log.loop_phase = t > policy.initialisation_length();
  return log;
}

}  // namespace fcucb
