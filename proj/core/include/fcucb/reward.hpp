#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fcucb/action_space.hpp"
#include "fcucb/env_model.hpp"
#include "fcucb/types.hpp"

namespace fcucb {

/// Realised reward of a round: the sum of the filtered observations.
double realized_reward(std::span<const double> y, const Combination& played);

/// Expected reward r_mu(S) as a function of a mean vector.
class ExpectedRewardFn {
 public:
  virtual ~ExpectedRewardFn() = default;

  [[nodiscard]] virtual double operator()(std::span<const double> mu,
                                          CombinationId id) const = 0;
  [[nodiscard]] virtual std::size_t combination_count() const = 0;
  [[nodiscard]] virtual std::size_t arm_count() const = 0;
};

/// r_mu(S) = sum_{i in S} gamma_{i,S} mu_i. The gamma coefficients are
/// resolved once per combination at construction.
class LinearFilteredReward final : public ExpectedRewardFn {
 public:
  struct Term {
    ArmId arm;
    double gamma;
  };

  LinearFilteredReward(const ActionSpace& space, const FilterModel& filter);

  [[nodiscard]] double operator()(std::span<const double> mu,
                                  CombinationId id) const override;
  [[nodiscard]] std::size_t combination_count() const override {
    return terms_.size();
  }
  [[nodiscard]] std::size_t arm_count() const override { return k_; }

  [[nodiscard]] std::span<const Term> terms(CombinationId id) const {
    return terms_.at(id);
  }

 private:
  std::size_t k_;
  std::vector<std::vector<Term>> terms_;
};

/// Checked evaluation: mu must have one entry per arm.
double expected_reward(const ExpectedRewardFn& fn, std::span<const double> mu,
                       CombinationId id);

/// Bounded-smoothness function f(L) = slope * L. For the linear filtered
/// reward slope = k works since every gamma is at most 1.
struct LinearSmoothness {
  double slope = 1.0;

  [[nodiscard]] double operator()(double lambda) const {
    return slope * lambda;
  }
  [[nodiscard]] double inverse(double x) const { return x / slope; }
};

/// Relative tolerance used when deciding whether a reward equals opt.
inline constexpr double kOptimalityRelTol = 1e-9;

/// True when a and b agree to kOptimalityRelTol relative tolerance.
bool same_reward(double a, double b);

struct GapStats {
  double opt = 0.0;
  /// Both empty iff every combination is optimal.
  std::optional<double> delta_min;
  std::optional<double> delta_max;
  std::vector<CombinationId> optimal_ids;

  [[nodiscard]] bool defined() const { return delta_min.has_value(); }
  [[nodiscard]] bool is_optimal(CombinationId id) const;
};

GapStats compute_gaps(const ExpectedRewardFn& fn, std::span<const double> mu);

}  // namespace fcucb
