#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "fcucb/env_model.hpp"
#include "fcucb/estimators.hpp"

namespace fcucb {

/// Detection probabilities gamma_1..gamma_n fed to one estimator
/// realisation.
class GammaSequence {
 public:
  struct Constant {
    double value = 1.0;
  };
  struct Uniform {
    double min = 0.5;  ///< i.i.d. uniform on [min, 1], fresh per repetition
  };
  struct Fixed {
    std::vector<double> values;  ///< used verbatim; length must be >= n
  };
  using Kind = std::variant<Constant, Uniform, Fixed>;

  static GammaSequence constant(double value);
  static GammaSequence uniform(double min);
  static GammaSequence fixed(std::vector<double> values);

  [[nodiscard]] const Kind& kind() const { return kind_; }
  [[nodiscard]] bool is_unit() const;
  [[nodiscard]] double lower_bound() const;
  /// gamma for sample t (1-based); draws from `rng` only for Uniform.
  double at(std::size_t t, RandomStream& rng) const;

 private:
  explicit GammaSequence(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

struct ConcentrationExperiment {
  EstimatorSpec estimator = EstimatorSpec::filtered_truncated(1.0, 0.3);
  UnderlyingDistribution arm = UnderlyingDistribution::poisson(1.0);
  GammaSequence gammas = GammaSequence::uniform(0.3);
  /// Binomial thinning of the outcomes; otherwise Y = X and the gamma
  /// sequence must be identically 1.
  bool binomial_filter = true;
  std::size_t n = 50;
  double delta = 0.05;
  std::size_t reps = 10'000;
  std::uint64_t seed = 1;
};

struct ConcentrationResult {
  double radius = 0.0;
  double upper_freq = 0.0;  ///< share of runs with mu_hat >= mu + radius
  double lower_freq = 0.0;  ///< share of runs with mu >= mu_hat + radius
  double tolerance = 0.0;   ///< delta + 3 binomial standard errors
  std::size_t upper_count = 0;
  std::size_t lower_count = 0;
  bool pass = false;
  /// Hypotheses of the concentration guarantee that the setup violates.
  std::vector<std::string> warnings;
};

/// Acceptance level for a one-sided exceedance frequency at `reps`
/// repetitions: delta + 3 sqrt(delta (1 - delta) / reps).
double exceedance_tolerance(double delta, std::size_t reps);

ConcentrationResult run_concentration(const ConcentrationExperiment& exp);

struct ThinningCheck {
  double target = 0.0;  ///< gamma * mu
  double sample_mean = 0.0;
  double sample_variance = 0.0;
  double mean_err = 0.0;  ///< (mean - target) / sqrt(target / N)
  double var_err = 0.0;   ///< (var - target) / sqrt((target + 2 target^2) / N)
  double var_rel_err = 0.0;
};

/// Draws X ~ Poisson(mu), Y | X ~ Bin(X, gamma) `samples` times and compares
/// the first two moments of Y with Poisson(gamma mu). Needs samples >= 1e5.
ThinningCheck run_thinning_check(double mu, double gamma, std::size_t samples,
                                 std::uint64_t seed = 1);

}  // namespace fcucb
