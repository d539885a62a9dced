#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fcucb/estimators.hpp"
#include "fcucb/policy.hpp"
#include "fcucb/reward.hpp"
#include "fcucb/rng.hpp"

namespace fcucb {

/// One row of the per-round regret trace. Regret is measured on expected
/// rewards (pseudo-regret).
struct RegretEntry {
  Round t = 0;
  CombinationId combination = 0;
  double realized_reward = 0.0;
  double expected_reward = 0.0;
  double instant_regret = 0.0;
  double cumulative_regret = 0.0;
  bool loop_phase = false;
  bool optimal = false;
};

enum class TieBreak {
  Random,       ///< uniform over the minimising arms, from the tie stream
  LowestIndex,  ///< lowest arm id among the minimisers
};

/// Suboptimal-play counters N_i. All start at 1 once initialisation ends;
/// each suboptimal loop-phase play increments one minimum counter among the
/// played arms, so sum_i N_i - k counts suboptimal loop plays.
class NCounters {
 public:
  explicit NCounters(std::size_t k) : values_(k, 1) {}

  /// Returns the incremented arm, or nothing for an optimal play. `rng` is
  /// only drawn from on a tie under TieBreak::Random.
  std::optional<ArmId> update(std::span<const ArmId> played, bool optimal,
                              TieBreak ties, RandomStream* rng);

  [[nodiscard]] std::span<const std::uint64_t> values() const {
    return values_;
  }
  [[nodiscard]] std::uint64_t total() const;

 private:
  std::vector<std::uint64_t> values_;
};

/// Regret trace of one replication together with its N_i and T_i counters.
class RegretReport {
 public:
  RegretReport(std::size_t k, std::uint64_t replication, TieBreak ties);

  /// Appends a round. Rounds must arrive in order 1, 2, ...
  void record(const RoundLog& log, const StreamFactory& streams);

  [[nodiscard]] std::span<const RegretEntry> entries() const {
    return entries_;
  }
  [[nodiscard]] double cumulative_regret() const;
  /// Cumulative regret after round t (t <= rounds recorded; 0 for t = 0).
  [[nodiscard]] double cumulative_regret_at(Round t) const;
  [[nodiscard]] const NCounters& ncounters() const { return ncounters_; }
  [[nodiscard]] std::span<const std::uint64_t> plays() const { return plays_; }
  [[nodiscard]] std::uint64_t suboptimal_loop_plays() const {
    return suboptimal_loop_;
  }
  [[nodiscard]] std::uint64_t replication() const { return replication_; }

 private:
  std::uint64_t replication_;
  TieBreak ties_;
  std::vector<RegretEntry> entries_;
  NCounters ncounters_;
  std::vector<std::uint64_t> plays_;
  std::uint64_t suboptimal_loop_ = 0;
};

/// Regret bound for a generic estimator with constants (eps, c, v):
///   (3 c v^(1/eps) (2 / f^-1(dmin))^((1+eps)/eps) ln n + pi^2/3 + 1) k dmax
/// Throws BoundUnavailable when the gaps are undefined.
double theorem1_bound(const RadiusParams& params, const GapStats& gaps,
                      const LinearSmoothness& smooth, std::size_t k, double n);

/// Truncated empirical mean, heavy tails with E|X|^(1+eps) <= u.
double prop2_bound(double u, double epsilon, const GapStats& gaps,
                   const LinearSmoothness& smooth, std::size_t k, double n);

/// Filtered truncated mean on binomially filtered Poisson arms.
double prop4_bound(double mu_max, double gamma_min, const GapStats& gaps,
                   const LinearSmoothness& smooth, std::size_t k, double n);

enum class BoundKind { Theorem1, Prop2, Prop4 };

std::string to_string(BoundKind kind);

/// Picks the bound matching an index policy's estimator: prop2/prop4 for
/// certified constants, theorem1 when the constants were overridden.
struct BoundSelector {
  BoundKind kind = BoundKind::Theorem1;
  EstimatorSpec estimator = EstimatorSpec::empirical();
  RadiusParams params;

  static BoundSelector for_policy(const IndexPolicyConfig& config);

  [[nodiscard]] double evaluate(const GapStats& gaps,
                                const LinearSmoothness& smooth, std::size_t k,
                                double n) const;
};

}  // namespace fcucb
