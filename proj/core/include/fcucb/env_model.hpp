#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fcucb/rng.hpp"
#include "fcucb/types.hpp"

namespace fcucb {

struct PoissonArm {
  double mu = 0.0;
};

/// Pareto type I: P(X > x) = (scale / x)^shape for x >= scale.
struct ParetoArm {
  double shape = 2.0;
  double scale = 1.0;
};

struct ConstantArm {
  double value = 0.0;
};

/// Underlying outcome distribution of one arm. Immutable once built; the
/// cached mean is the analytic mean of the parameterised law.
class UnderlyingDistribution {
 public:
  using Kind = std::variant<PoissonArm, ParetoArm, ConstantArm>;

  static UnderlyingDistribution poisson(double mu);
  /// Requires shape > 1 so the mean is finite.
  static UnderlyingDistribution pareto(double shape, double scale);
  static UnderlyingDistribution constant(double value);

  [[nodiscard]] const Kind& kind() const { return kind_; }
  [[nodiscard]] double mean() const { return mean_; }
  [[nodiscard]] bool integer_valued() const;

  /// E|X|^p, or +infinity when the moment does not exist.
  [[nodiscard]] double raw_moment(double p) const;

  [[nodiscard]] std::string describe() const;

 private:
  UnderlyingDistribution(Kind kind, double mean) : kind_(kind), mean_(mean) {}

  Kind kind_;
  double mean_;
};

double sample_true_outcome(const UnderlyingDistribution& dist,
                           RandomStream& rng);

/// Detection probabilities gamma_{i,S}. Either a per-size rule (gamma
/// depends only on |S|) or an explicit (arm, combination) table.
class DetectionModel {
 public:
  using TableKey = std::pair<ArmId, CombinationId>;

  /// gamma_by_size[s - 1] is the detection probability for |S| = s. Must be
  /// nonincreasing and inside (0, 1].
  static DetectionModel size_rule(std::vector<double> gamma_by_size,
                                  std::optional<double> gamma_min = {});
  /// gamma = 1/|S| for |S| = 1..max_size.
  static DetectionModel inverse_size(std::size_t max_size);
  static DetectionModel table(std::map<TableKey, double> entries,
                              std::optional<double> gamma_min = {});
  /// gamma = 1 everywhere.
  static DetectionModel certain();

  /// Throws ConfigError for a pair missing from a table, or a size outside
  /// the tabulated rule.
  [[nodiscard]] double gamma(ArmId arm, PlayedCombination played) const;

  /// Declared lower bound: explicit, or the smallest value the model can
  /// produce.
  [[nodiscard]] double gamma_min() const { return gamma_min_; }
  [[nodiscard]] bool is_table() const { return !table_.empty(); }
  [[nodiscard]] const std::vector<double>& gamma_by_size() const {
    return by_size_;
  }
  [[nodiscard]] const std::map<TableKey, double>& entries() const {
    return table_;
  }

 private:
  DetectionModel() = default;

  std::vector<double> by_size_;
  std::map<TableKey, double> table_;
  bool certain_ = false;
  double gamma_min_ = 1.0;
};

/// Maps true outcomes X to filtered observations Y.
class FilterModel {
 public:
  static FilterModel identity() { return FilterModel{}; }
  static FilterModel binomial(DetectionModel detection);

  [[nodiscard]] bool is_identity() const { return !detection_.has_value(); }
  /// 1 under identity filtering.
  [[nodiscard]] double gamma(ArmId arm, PlayedCombination played) const;
  [[nodiscard]] const DetectionModel* detection() const {
    return detection_ ? &*detection_ : nullptr;
  }

 private:
  std::optional<DetectionModel> detection_;
};

/// Draw from Bin(x, gamma).
std::uint64_t binomial_thin(std::uint64_t x, double gamma, RandomStream& rng);

/// Identity returns x. Binomial requires integral x and returns a
/// Bin(x, gamma_{arm,S}) draw, always <= x.
double apply_filter(const FilterModel& filter, double x, ArmId arm,
                    PlayedCombination played, RandomStream& rng);

/// Mean of the filtered observation: gamma * mu.
double marginal_filtered_mean(const UnderlyingDistribution& dist,
                              double gamma);

}  // namespace fcucb
