#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fcucb/errors.hpp"
#include "fcucb/estimators.hpp"

using namespace fcucb;

namespace {

ObservationHistory history(std::vector<double> y, std::vector<double> g = {}) {
  ObservationHistory h;
  for (std::size_t i = 0; i < y.size(); ++i) {
    h.record(y[i], g.empty() ? 1.0 : g[i], i + 1);
  }
  return h;
}

// Reference truncated mean written straight from the definition.
double reference_truncated(const std::vector<double>& x, double u, double eps,
                           double log_inv_delta) {
  double s = 0.0;
  for (std::size_t t = 1; t <= x.size(); ++t) {
    const double b = std::pow(u * t / log_inv_delta, 1.0 / (1.0 + eps));
    if (std::abs(x[t - 1]) <= b) s += x[t - 1];
  }
  return s / x.size();
}

double reference_filtered(const std::vector<double>& y,
                          const std::vector<double>& g, double mu_max,
                          double log_inv_delta) {
  const double um = mu_max * mu_max + mu_max;
  double s = 0.0;
  for (std::size_t t = 1; t <= y.size(); ++t) {
    const double b = std::sqrt(um * t / log_inv_delta);
    if (y[t - 1] <= g[t - 1] * b) s += y[t - 1] / g[t - 1];
  }
  return s / y.size();
}

const Confidence kUnitLog = Confidence::from_log_inv_delta(1.0);

}  // namespace

TEST(EmpiricalEstimator, Examples) {
  EXPECT_DOUBLE_EQ(estimate_empirical(history({2, 4})), 3.0);
  EXPECT_DOUBLE_EQ(estimate_empirical(history({2}, {0.5})), 4.0);
  EXPECT_EQ(estimate_empirical(history({0, 0, 0}, {0.2, 0.9, 0.5})), 0.0);
  EXPECT_THROW(estimate_empirical(ObservationHistory{}), ContractViolation);
}

TEST(TruncatedEstimator, HandEvaluatedExamples) {
  const auto one = Confidence::from_delta(std::exp(-1.0));
  EXPECT_NEAR(one.log_inv_delta(), 1.0, 1e-15);
  EXPECT_EQ(estimate_truncated(history({10}), 1.0, 1.0, kUnitLog), 0.0);
  EXPECT_DOUBLE_EQ(estimate_truncated(history({1, 100}), 4.0, 1.0, kUnitLog), 0.5);
  // No observation reaches a threshold: plain mean.
  EXPECT_DOUBLE_EQ(estimate_truncated(history({0.5, 1.0, 1.5}), 4.0, 1.0, kUnitLog),
                   1.0);
}

TEST(TruncatedEstimator, RequiresUnfilteredHistory) {
  EXPECT_THROW(estimate_truncated(history({1, 2}, {1.0, 0.5}), 4, 1, kUnitLog),
               ContractViolation);
  EXPECT_THROW(estimate_truncated(ObservationHistory{}, 4, 1, kUnitLog),
               ContractViolation);
}

TEST(TruncatedEstimator, SampleIndexVariant) {
  // ln(1) = 0 makes the first threshold infinite, so the first sample is
  // always kept; later thresholds use ln(t).
  const auto h = history({50, 50, 1});
  const double got = estimate_truncated(h, 4.0, 1.0, kUnitLog,
                                        TruncationLog::SampleIndex);
  // t=2: sqrt(8 / ln 2) ~ 3.40 drops 50; t=3: sqrt(12 / ln 3) ~ 3.30 keeps 1.
  EXPECT_DOUBLE_EQ(got, 51.0 / 3.0);
}

TEST(TruncatedEstimator, MatchesReferenceOnRandomData) {
  std::mt19937_64 gen(21);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + gen() % 60;
    std::vector<double> x(n);
    for (auto& v : x) v = 1.0 / std::pow(1.0 - unit(gen), 0.6);  // heavy tail
    const double u = 0.5 + 10.0 * unit(gen);
    const double eps = 0.1 + 0.9 * unit(gen);
    const double l = 0.1 + 20.0 * unit(gen);
    ASSERT_NEAR(estimate_truncated(history(x), u, eps,
                                   Confidence::from_log_inv_delta(l)),
                reference_truncated(x, u, eps, l), 1e-12);
  }
}

TEST(FilteredTruncatedEstimator, Examples) {
  // mu_max = 1, ln(1/delta) = 1: B_2 = 2, so with gamma_2 = 0.5 the second
  // observation survives iff y_2 <= 1.
  const double kept = estimate_filtered_truncated(history({0, 1}, {1, 0.5}), 1.0, kUnitLog);
  EXPECT_DOUBLE_EQ(kept, (0.0 + 2.0) / 2.0);
  const double dropped = estimate_filtered_truncated(history({0, 2}, {1, 0.5}), 1.0, kUnitLog);
  EXPECT_EQ(dropped, 0.0);

  EXPECT_EQ(estimate_filtered_truncated(history({0, 0, 0, 0}, {0.3, 1, 0.7, 0.4}),
                                        5.0, kUnitLog),
            0.0);
  EXPECT_DOUBLE_EQ(estimate_filtered_truncated(history({1, 1, 2}), 3.0, kUnitLog),
                   4.0 / 3.0);
}

TEST(FilteredTruncatedEstimator, MatchesReferenceOnRandomData) {
  std::mt19937_64 gen(22);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + gen() % 60;
    std::vector<double> y(n), g(n);
    for (std::size_t i = 0; i < n; ++i) {
      g[i] = 0.05 + 0.95 * unit(gen);
      y[i] = static_cast<double>(gen() % 12);
    }
    const double mu_max = 0.2 + 5.0 * unit(gen);
    const double l = 0.1 + 20.0 * unit(gen);
    ASSERT_NEAR(estimate_filtered_truncated(history(y, g), mu_max,
                                            Confidence::from_log_inv_delta(l)),
                reference_filtered(y, g, mu_max, l), 1e-12);
  }
}

TEST(Confidence, LevelsAndErrors) {
  EXPECT_NEAR(Confidence::at_round(10).log_inv_delta(), 3.0 * std::log(10.0), 1e-12);
  EXPECT_NEAR(Confidence::from_delta(0.05).log_inv_delta(), std::log(20.0), 1e-12);
  EXPECT_THROW(Confidence::from_delta(1.0), ContractViolation);
  EXPECT_THROW(Confidence::from_delta(0.0), ContractViolation);
  EXPECT_THROW(Confidence::from_delta(1.5), ContractViolation);
  EXPECT_THROW(Confidence::at_round(1), ContractViolation);
  EXPECT_THROW(Confidence::from_log_inv_delta(0.0), ContractViolation);
}

TEST(ConfidenceRadius, UnitCase) {
  const RadiusParams p{1.0, 1.0, 1.0};
  EXPECT_DOUBLE_EQ(confidence_radius(p, 3, Confidence::from_log_inv_delta(3.0)), 1.0);
}

TEST(ConfidenceRadius, FilteredTruncatedConstants) {
  const auto spec = EstimatorSpec::filtered_truncated(1.0, 0.5);
  const auto p = certified_radius_params(spec);
  EXPECT_EQ(p.epsilon, 1.0);
  EXPECT_DOUBLE_EQ(p.c, 2.0);
  EXPECT_DOUBLE_EQ(p.v, (19.0 / 3.0) * (19.0 / 3.0));
  EXPECT_DOUBLE_EQ(confidence_radius(spec, 2, kUnitLog), 19.0 / 3.0);
}

TEST(ConfidenceRadius, TruncatedConstants) {
  const auto spec = EstimatorSpec::truncated(2.5, 0.5);
  const auto p = certified_radius_params(spec);
  EXPECT_EQ(p.epsilon, 0.5);
  EXPECT_EQ(p.c, 4.0);
  EXPECT_EQ(p.v, 10.0);
  // v^(1/1.5) (4 * 2 / 7)^(0.5/1.5)
  const double expected = std::pow(10.0, 1.0 / 1.5) * std::pow(8.0 / 7.0, 1.0 / 3.0);
  EXPECT_NEAR(confidence_radius(spec, 7, Confidence::from_log_inv_delta(2.0)),
              expected, 1e-12);
  EXPECT_THROW(certified_radius_params(EstimatorSpec::empirical()), Unsupported);
}

TEST(ConfidenceRadius, StrictlyDecreasingInCount) {
  for (const auto& spec : {EstimatorSpec::truncated(3.0, 0.3),
                           EstimatorSpec::truncated(1.0, 1.0),
                           EstimatorSpec::filtered_truncated(2.0, 0.25)}) {
    double prev = INFINITY;
    for (std::size_t n = 1; n <= 2000; ++n) {
      const double r = confidence_radius(spec, n, Confidence::from_delta(0.01));
      ASSERT_GT(r, 0.0);
      ASSERT_LT(r, prev);
      prev = r;
    }
  }
  EXPECT_THROW(confidence_radius(RadiusParams{}, 0, kUnitLog), ContractViolation);
  EXPECT_THROW(validate(RadiusParams{1.5, 1, 1}), ContractViolation);
  EXPECT_THROW(validate(RadiusParams{1, 0, 1}), ContractViolation);
}

TEST(EstimatorSpec, Validation) {
  EXPECT_EQ(EstimatorSpec::filtered_truncated(3.0, 0.5).epsilon(), 1.0);
  EXPECT_THROW(EstimatorSpec::truncated(0.0, 1.0), ConfigError);
  EXPECT_THROW(EstimatorSpec::truncated(1.0, 0.0), ConfigError);
  EXPECT_THROW(EstimatorSpec::truncated(1.0, 1.2), ConfigError);
  EXPECT_THROW(EstimatorSpec::filtered_truncated(0.0, 0.5), ConfigError);
  EXPECT_THROW(EstimatorSpec::filtered_truncated(1.0, 0.0), ConfigError);
  EXPECT_THROW(EstimatorSpec::filtered_truncated(1.0, 1.1), ConfigError);
  const FilteredTruncatedSpec s{4.0, 0.5};
  EXPECT_EQ(s.u_max(), 20.0);
}

TEST(ObservationHistory, RecordContracts) {
  ObservationHistory h;
  h.record(1.0, 0.5, 3);
  EXPECT_THROW(h.record(1.0, 0.5, 3), ContractViolation);
  EXPECT_THROW(h.record(-1.0, 0.5, 4), ContractViolation);
  EXPECT_THROW(h.record(1.0, 0.0, 4), ContractViolation);
  EXPECT_THROW(h.record(1.0, 1.01, 4), ContractViolation);
  h.record(2.0, 1.0, 7);
  EXPECT_EQ(h.count(), 2u);
  EXPECT_EQ(h.observations()[1].round, 7u);
}

TEST(EstimatorProperty, DegenerateConsistency) {
  std::mt19937_64 gen(23);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + gen() % 40;
    std::vector<double> y(n);
    // Every value stays below the smallest threshold (t = 1) of both
    // truncated estimators at these parameters.
    for (auto& v : y) v = static_cast<double>(gen() % 2);
    const auto h = history(y);
    const auto level = Confidence::from_log_inv_delta(2.0);
    const double e = estimate_empirical(h);
    ASSERT_EQ(estimate_truncated(h, 4.0, 1.0, level), e);
    ASSERT_EQ(estimate_filtered_truncated(h, 2.0, level), e);
  }
}

TEST(EstimatorProperty, StreamingMatchesBatch) {
  std::mt19937_64 gen(24);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::vector<EstimatorSpec> specs{
      EstimatorSpec::empirical(), EstimatorSpec::truncated(2.0, 0.7),
      EstimatorSpec::truncated(2.0, 0.7, TruncationLog::SampleIndex),
      EstimatorSpec::filtered_truncated(1.5, 0.2)};
  for (int trial = 0; trial < 100; ++trial) {
    for (const auto& spec : specs) {
      const bool filtered = std::holds_alternative<FilteredTruncatedSpec>(spec.kind()) ||
                            std::holds_alternative<EmpiricalSpec>(spec.kind());
      const auto level = Confidence::from_delta(0.01 + 0.9 * unit(gen));
      FixedLevelAccumulator acc(spec, level);
      ObservationHistory h;
      const std::size_t n = 1 + gen() % 50;
      for (std::size_t t = 1; t <= n; ++t) {
        const double g = filtered ? 0.2 + 0.8 * unit(gen) : 1.0;
        const double y = static_cast<double>(gen() % 9);
        acc.add(y, g);
        h.record(y, g, t);
        ASSERT_EQ(acc.value(), estimate(spec, h, level)) << spec.name();
      }
      // Rebuilding the history from scratch gives the same answer.
      ObservationHistory replay;
      for (const auto& o : h.observations()) replay.record(o.y, o.gamma, o.round);
      ASSERT_EQ(estimate(spec, replay, level), estimate(spec, h, level));
    }
  }
}
