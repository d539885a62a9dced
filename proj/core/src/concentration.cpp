#include "fcucb/concentration.hpp"

#include <cmath>
#include <sstream>

#include "fcucb/errors.hpp"

namespace fcucb {
namespace {

bool is_probability(double g) { return g > 0.0 && g <= 1.0; }

}  // namespace

GammaSequence GammaSequence::constant(double value) {
  if (!is_probability(value)) {
    throw ConfigError("gamma sequence: constant must be in (0, 1]");
  }
  return GammaSequence(Constant{value});
}

GammaSequence GammaSequence::uniform(double min) {
  if (!is_probability(min)) {
    throw ConfigError("gamma sequence: uniform lower end must be in (0, 1]");
  }
  return GammaSequence(Uniform{min});
}

GammaSequence GammaSequence::fixed(std::vector<double> values) {
  if (values.empty()) throw ConfigError("gamma sequence: empty fixed list");
  for (double g : values) {
    if (!is_probability(g)) {
      throw ConfigError("gamma sequence: fixed values must be in (0, 1]");
    }
  }
  return GammaSequence(Fixed{std::move(values)});
}

bool GammaSequence::is_unit() const {
  if (const auto* c = std::get_if<Constant>(&kind_)) return c->value == 1.0;
  if (const auto* u = std::get_if<Uniform>(&kind_)) return u->min == 1.0;
  const auto& f = std::get<Fixed>(kind_).values;
  for (double g : f) {
    if (g != 1.0) return false;
  }
  return true;
}

double GammaSequence::lower_bound() const {
  if (const auto* c = std::get_if<Constant>(&kind_)) return c->value;
  if (const auto* u = std::get_if<Uniform>(&kind_)) return u->min;
  double lo = 1.0;
  for (double g : std::get<Fixed>(kind_).values) lo = std::min(lo, g);
  return lo;
}

double GammaSequence::at(std::size_t t, RandomStream& rng) const {
  if (const auto* c = std::get_if<Constant>(&kind_)) return c->value;
  if (const auto* u = std::get_if<Uniform>(&kind_)) {
    // uniform01 is in [0, 1); 1 - it is in (0, 1], keeping gamma = 1 reachable
    // and gamma = min reachable only in the limit.
    return u->min + (1.0 - u->min) * (1.0 - rng.uniform01());
  }
  const auto& f = std::get<Fixed>(kind_).values;
  if (t == 0 || t > f.size()) {
    throw ContractViolation("gamma sequence: fixed list shorter than n");
  }
  return f[t - 1];
}

double exceedance_tolerance(double delta, std::size_t reps) {
  return delta +
         3.0 * std::sqrt(delta * (1.0 - delta) / static_cast<double>(reps));
}

ConcentrationResult run_concentration(const ConcentrationExperiment& exp) {
  if (exp.n == 0) throw ConfigError("concentration: n must be >= 1");
  if (exp.reps == 0) throw ConfigError("concentration: reps must be >= 1");
  const Confidence level = Confidence::from_delta(exp.delta);
  if (!exp.binomial_filter && !exp.gammas.is_unit()) {
    throw ConfigError(
        "concentration: identity filtering needs a gamma sequence of 1s");
  }
  if (exp.binomial_filter && !exp.arm.integer_valued()) {
    throw ConfigError("concentration: binomial filtering needs an "
                      "integer-valued arm, got " + exp.arm.describe());
  }
  if (const auto* f = std::get_if<GammaSequence::Fixed>(&exp.gammas.kind());
      f && f->values.size() < exp.n) {
    throw ConfigError("concentration: fixed gamma list shorter than n");
  }

  ConcentrationResult result;
  result.radius = confidence_radius(exp.estimator, exp.n, level);
  result.tolerance = exceedance_tolerance(exp.delta, exp.reps);

  const double mu = exp.arm.mean();
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        std::ostringstream w;
        if constexpr (std::is_same_v<S, FilteredTruncatedSpec>) {
          if (mu > s.mu_max) {
            w << "arm mean " << mu << " exceeds mu_max " << s.mu_max;
          } else if (exp.gammas.lower_bound() < s.gamma_min) {
            w << "gamma sequence goes below gamma_min " << s.gamma_min;
          } else if (!std::holds_alternative<PoissonArm>(exp.arm.kind()) &&
                     !std::holds_alternative<ConstantArm>(exp.arm.kind())) {
            w << "filtered truncated guarantee assumes Poisson arms";
          }
        } else if constexpr (std::is_same_v<S, TruncatedSpec>) {
          const double moment = exp.arm.raw_moment(1.0 + s.epsilon);
          if (moment > s.u) {
            w << "E|X|^(1+eps) = " << moment << " exceeds u = " << s.u;
          }
        }
        if (!w.str().empty()) result.warnings.push_back(w.str());
      },
      exp.estimator.kind());

  const StreamFactory streams(exp.seed);
  for (std::size_t r = 0; r < exp.reps; ++r) {
    auto gamma_rng = streams.stream({r, 0, 0, StreamPurpose::Gamma});
    auto outcome_rng = streams.stream({r, 0, 0, StreamPurpose::Outcome});
    auto filter_rng = streams.stream({r, 0, 0, StreamPurpose::Filter});
    FixedLevelAccumulator acc(exp.estimator, level);
    for (std::size_t t = 1; t <= exp.n; ++t) {
      const double g = exp.gammas.at(t, gamma_rng);
      const double x = sample_true_outcome(exp.arm, outcome_rng);
      const double y =
          exp.binomial_filter
              ? static_cast<double>(binomial_thin(
                    static_cast<std::uint64_t>(x), g, filter_rng))
              : x;
      acc.add(y, exp.binomial_filter ? g : 1.0);
    }
    const double est = acc.value();
    if (est >= mu + result.radius) ++result.upper_count;
    if (mu >= est + result.radius) ++result.lower_count;
  }
  const double reps = static_cast<double>(exp.reps);
  result.upper_freq = static_cast<double>(result.upper_count) / reps;
  result.lower_freq = static_cast<double>(result.lower_count) / reps;
  result.pass = result.upper_freq <= result.tolerance &&
                result.lower_freq <= result.tolerance;
  return result;
}

ThinningCheck run_thinning_check(double mu, double gamma, std::size_t samples,
                                 std::uint64_t seed) {
  if (samples < 100'000) {
    throw ContractViolation("thinning check: needs at least 1e5 samples");
  }
  const auto arm = UnderlyingDistribution::poisson(mu);
  ThinningCheck check;
  check.target = marginal_filtered_mean(arm, gamma);
  const StreamFactory streams(seed);
  auto outcome_rng = streams.stream({0, 0, 0, StreamPurpose::Outcome});
  auto filter_rng = streams.stream({0, 0, 0, StreamPurpose::Filter});

  // Welford accumulation.
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t i = 1; i <= samples; ++i) {
    const auto x = static_cast<std::uint64_t>(sample_true_outcome(arm, outcome_rng));
    const double y = static_cast<double>(binomial_thin(x, gamma, filter_rng));
    const double d = y - mean;
    mean += d / static_cast<double>(i);
    m2 += d * (y - mean);
  }
  check.sample_mean = mean;
  check.sample_variance = m2 / static_cast<double>(samples - 1);
  if (check.target == 0.0) return check;  // every draw is 0

  const double n = static_cast<double>(samples);
  const double lambda = check.target;
  check.mean_err = (mean - lambda) / std::sqrt(lambda / n);
  check.var_err = (check.sample_variance - lambda) /
                  std::sqrt((lambda + 2.0 * lambda * lambda) / n);
  check.var_rel_err = (check.sample_variance - lambda) / lambda;
  return check;
}

}  // namespace fcucb
