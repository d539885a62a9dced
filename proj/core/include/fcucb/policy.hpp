#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fcucb/estimators.hpp"
#include "fcucb/problem.hpp"
#include "fcucb/rng.hpp"

namespace fcucb {

/// How the initialisation phase covers the arms.
enum class InitMode {
  Strict,  ///< one round per arm: the lowest-id combination containing it
  Skip,    ///< as Strict, but arms covered by an earlier entry are skipped
};

/// Deterministic initialisation schedule. Arms are visited in ascending
/// order.
std::vector<CombinationId> initialisation_schedule(const ActionSpace& space,
                                                   InitMode mode);

/// Everything that happened in one round.
struct RoundLog {
  Round t = 0;
  CombinationId combination = 0;
  std::vector<ArmId> arms;
  std::vector<double> x;      ///< true outcomes (hidden from the policy)
  std::vector<double> y;      ///< filtered observations
  std::vector<double> gamma;  ///< detection probabilities in force
  double realized_reward = 0.0;
  double expected_reward = 0.0;
  double instant_regret = 0.0;
  bool loop_phase = false;
  bool optimal = false;
};

class Policy {
 public:
  virtual ~Policy() = default;

  [[nodiscard]] virtual std::string name() const = 0;

  /// Combination for round t. Rounds are consecutive from 1. `rng` is the
  /// round's policy stream.
  virtual CombinationId select(Round t, RandomStream& rng) = 0;

  /// Feedback for the round just selected.
  virtual void observe(Round t, CombinationId played,
                       std::span<const ArmId> arms, std::span<const double> y,
                       std::span<const double> gamma) = 0;

  /// Number of forced rounds before the loop phase.
  [[nodiscard]] virtual std::size_t initialisation_length() const { return 0; }
};

struct IndexPolicyConfig {
  EstimatorSpec estimator = EstimatorSpec::empirical();
  /// Index constants. Defaults to the estimator's certified constants;
  /// required for the empirical estimator.
  std::optional<RadiusParams> radius;
  InitMode init = InitMode::Strict;
};

enum class Phase { Initialisation, Loop };

/// mu_hat(delta) + radius(T_i, delta) for one arm.
double ucb_index(const EstimatorSpec& spec, const RadiusParams& params,
                 const ObservationHistory& hist, Confidence level);

/// UCB index policy over combinations: initialisation schedule, then each
/// round plays the oracle argmax of
///   mu_bar_i = mu_hat_i(delta_t) + v^(1/(1+eps)) (c ln t^3 / T_i)^(eps/(1+eps))
/// with delta_t = t^-3. With a robust estimator this is Robust-F-CUCB; with
/// the empirical estimator it is the plain CUCB baseline.
class IndexPolicy final : public Policy {
 public:
  IndexPolicy(const ProblemInstance& instance, IndexPolicyConfig config);

  [[nodiscard]] std::string name() const override;
  CombinationId select(Round t, RandomStream& rng) override;
  void observe(Round t, CombinationId played, std::span<const ArmId> arms,
               std::span<const double> y,
               std::span<const double> gamma) override;
  [[nodiscard]] std::size_t initialisation_length() const override {
    return schedule_.size();
  }

  /// Requires the loop phase: t > initialisation_length() and every arm
  /// observed at least once.
  [[nodiscard]] std::vector<double> compute_indices(Round t) const;

  [[nodiscard]] Phase phase() const;
  [[nodiscard]] Round last_round() const { return t_; }
  [[nodiscard]] const RadiusParams& radius_params() const { return params_; }
  [[nodiscard]] const EstimatorSpec& estimator() const {
    return config_.estimator;
  }
  [[nodiscard]] std::span<const CombinationId> schedule() const {
    return schedule_;
  }
  [[nodiscard]] std::span<const ObservationHistory> histories() const {
    return histories_;
  }
  /// Indices used for the most recent loop-phase decision.
  [[nodiscard]] std::span<const double> last_indices() const {
    return indices_;
  }

 private:
  const ProblemInstance* instance_;
  IndexPolicyConfig config_;
  RadiusParams params_;
  std::vector<CombinationId> schedule_;
  std::vector<ObservationHistory> histories_;
  std::vector<double> indices_;
  Round t_ = 0;
  std::optional<CombinationId> pending_;
};

/// Always plays the lowest-id optimal combination under the true means.
class OptimalOraclePolicy final : public Policy {
 public:
  explicit OptimalOraclePolicy(const ProblemInstance& instance);

  [[nodiscard]] std::string name() const override { return "optimal_oracle"; }
  CombinationId select(Round t, RandomStream& rng) override;
  void observe(Round, CombinationId, std::span<const ArmId>,
               std::span<const double>, std::span<const double>) override {}

 private:
  CombinationId best_;
};

/// Uniform over the action space each round.
class UniformRandomPolicy final : public Policy {
 public:
  explicit UniformRandomPolicy(const ProblemInstance& instance);

  [[nodiscard]] std::string name() const override { return "uniform_random"; }
  CombinationId select(Round t, RandomStream& rng) override;
  void observe(Round, CombinationId, std::span<const ArmId>,
               std::span<const double>, std::span<const double>) override {}

 private:
  std::size_t size_;
};

std::unique_ptr<Policy> make_robust_fcucb(const ProblemInstance& instance,
                                          EstimatorSpec estimator,
                                          InitMode init = InitMode::Strict);
std::unique_ptr<Policy> make_empirical_cucb(const ProblemInstance& instance,
                                            RadiusParams radius,
                                            InitMode init = InitMode::Strict);

/// Plays one round: asks the policy, draws X and Y from the round's
/// outcome and filter streams, feeds Y back, and scores the choice.
RoundLog step(Policy& policy, const ProblemInstance& instance, Round t,
              const StreamFactory& streams, std::uint64_t replication);

}  // namespace fcucb
