#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fcucb/types.hpp"

namespace fcucb {

struct Observation {
  double y = 0.0;      ///< filtered observation
  double gamma = 1.0;  ///< detection probability in force when observed
  Round round = 0;     ///< round in which the arm was played
};

/// Everything observed on one arm, in play order. count() is T_i.
class ObservationHistory {
 public:
  /// Requires y >= 0, gamma in (0, 1] and a round after the previous one.
  void record(double y, double gamma, Round round);

  [[nodiscard]] std::size_t count() const { return obs_.size(); }
  [[nodiscard]] bool empty() const { return obs_.empty(); }
  [[nodiscard]] std::span<const Observation> observations() const {
    return obs_;
  }

 private:
  std::vector<Observation> obs_;
};

/// Confidence level carried as ln(1/delta), which keeps delta = t^-3
/// representable for any round.
class Confidence {
 public:
  /// delta in (0, 1).
  static Confidence from_delta(double delta);
  /// delta = t^-3, so ln(1/delta) = 3 ln t. Requires t >= 2.
  static Confidence at_round(Round t);
  static Confidence from_log_inv_delta(double log_inv_delta);

  [[nodiscard]] double log_inv_delta() const { return log_inv_delta_; }

 private:
  explicit Confidence(double l) : log_inv_delta_(l) {}
  double log_inv_delta_;
};

/// Which logarithm sits in the truncated-mean threshold.
enum class TruncationLog {
  InverseDelta,  ///< (u t / ln(1/delta))^(1/(1+eps))
  SampleIndex,   ///< (u t / ln t)^(1/(1+eps)), literal variant
};

struct EmpiricalSpec {};

struct TruncatedSpec {
  double u = 1.0;        ///< bound on E|X|^(1+eps)
  double epsilon = 1.0;  ///< in (0, 1]
  TruncationLog log_form = TruncationLog::InverseDelta;
};

struct FilteredTruncatedSpec {
  double mu_max = 1.0;
  double gamma_min = 1.0;

  [[nodiscard]] double u_max() const { return mu_max * mu_max + mu_max; }
};

/// Choice of mean estimator plus the parameters it needs.
class EstimatorSpec {
 public:
  using Kind = std::variant<EmpiricalSpec, TruncatedSpec, FilteredTruncatedSpec>;

  static EstimatorSpec empirical() { return EstimatorSpec(EmpiricalSpec{}); }
  static EstimatorSpec truncated(
      double u, double epsilon,
      TruncationLog log_form = TruncationLog::InverseDelta);
  static EstimatorSpec filtered_truncated(double mu_max, double gamma_min);

  [[nodiscard]] const Kind& kind() const { return kind_; }
  /// 1 for the filtered truncated mean.
  [[nodiscard]] double epsilon() const;
  [[nodiscard]] std::string name() const;

 private:
  explicit EstimatorSpec(Kind kind) : kind_(kind) {}
  Kind kind_;
};

/// (epsilon, c, v) of the concentration contract
///   P(|mu_hat - mu| >= v^(1/(1+eps)) (c ln(1/delta) / n)^(eps/(1+eps))) <= delta
/// (each side separately).
struct RadiusParams {
  double epsilon = 1.0;
  double c = 1.0;
  double v = 1.0;
};

/// Truncated: c = 4, v = 4u. Filtered truncated: eps = 1, c = u_max,
/// v = (2/gmin + sqrt(2/gmin) + 1/3)^2. Empirical throws Unsupported.
RadiusParams certified_radius_params(const EstimatorSpec& spec);

/// Throws ContractViolation unless eps in (0,1] and c, v > 0.
void validate(const RadiusParams& params);

double confidence_radius(const RadiusParams& params, std::size_t n,
                         Confidence level);
double confidence_radius(const EstimatorSpec& spec, std::size_t n,
                         Confidence level);

/// (1/n) sum y_t / gamma_t.
double estimate_empirical(const ObservationHistory& hist);

/// Truncated empirical mean; every record must have gamma = 1.
double estimate_truncated(const ObservationHistory& hist, double u,
                          double epsilon, Confidence level,
                          TruncationLog log_form = TruncationLog::InverseDelta);

/// (1/n) sum (y_t/gamma_t) 1{y_t <= gamma_t sqrt(u_max t / ln(1/delta))}.
double estimate_filtered_truncated(const ObservationHistory& hist,
                                   double mu_max, Confidence level);

/// Dispatch on spec.
double estimate(const EstimatorSpec& spec, const ObservationHistory& hist,
                Confidence level);

/// Streaming estimator at a fixed confidence level. Thresholds depend only
/// on the within-arm sample index, so each observation is classified once
/// when it arrives; value() matches estimate() on the same history.
class FixedLevelAccumulator {
 public:
  FixedLevelAccumulator(EstimatorSpec spec, Confidence level);

  void add(double y, double gamma);
  [[nodiscard]] std::size_t count() const { return count_; }
  /// Requires count() >= 1.
  [[nodiscard]] double value() const;

 private:
  EstimatorSpec spec_;
  Confidence level_;
  std::size_t count_ = 0;
  double sum_ = 0.0;
};

}  // namespace fcucb
