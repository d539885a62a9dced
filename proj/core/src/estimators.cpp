#include "fcucb/estimators.hpp"

#include <cmath>
#include <limits>

#include "fcucb/errors.hpp"

namespace fcucb {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_nonempty(const ObservationHistory& hist, const char* who) {
  if (hist.empty()) {
    throw ContractViolation(std::string(who) + ": empty observation history");
  }
}

// Contribution of the t-th observation (t is 1-based within the arm). Batch
// and streaming estimators both sum these in order, so they agree bit for bit.
double truncated_term(const TruncatedSpec& s, Confidence level, double x,
                      std::size_t t) {
  const double td = static_cast<double>(t);
  double log_term = level.log_inv_delta();
  if (s.log_form == TruncationLog::SampleIndex) {
    log_term = std::log(td);
    if (log_term <= 0.0) return x;  // ln 1 = 0: unbounded threshold
  }
  const double base = s.u * td / log_term;
  const double threshold =
      s.epsilon == 1.0 ? std::sqrt(base) : std::pow(base, 1.0 / (1.0 + s.epsilon));
  return std::abs(x) <= threshold ? x : 0.0;
}

double filtered_term(double u_max, Confidence level, const Observation& o,
                     std::size_t t) {
  const double bound =
      std::sqrt(u_max * static_cast<double>(t) / level.log_inv_delta());
  return o.y <= o.gamma * bound ? o.y / o.gamma : 0.0;
}

void validate_spec(const EstimatorSpec::Kind& kind) {
  std::visit(
      Overloaded{
          [](const EmpiricalSpec&) {},
          [](const TruncatedSpec& s) {
            if (!(s.u > 0.0) || !std::isfinite(s.u)) {
              throw ConfigError("truncated estimator: u must be positive");
            }
            if (!(s.epsilon > 0.0 && s.epsilon <= 1.0)) {
              throw ConfigError("truncated estimator: epsilon must be in (0, 1]");
            }
          },
          [](const FilteredTruncatedSpec& s) {
            if (!(s.mu_max > 0.0) || !std::isfinite(s.mu_max)) {
              throw ConfigError(
                  "filtered truncated estimator: mu_max must be positive");
            }
            if (!(s.gamma_min > 0.0 && s.gamma_min <= 1.0)) {
              throw ConfigError(
                  "filtered truncated estimator: gamma_min must be in (0, 1]");
            }
          }},
      kind);
}

}  // namespace

void ObservationHistory::record(double y, double gamma, Round round) {
  if (!(y >= 0.0) || !std::isfinite(y)) {
    throw ContractViolation("observation: y must be finite and >= 0");
  }
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw ContractViolation("observation: gamma must be in (0, 1]");
  }
  if (!obs_.empty() && round <= obs_.back().round) {
    throw ContractViolation("observation: rounds must strictly increase");
  }
  obs_.push_back({y, gamma, round});
}

Confidence Confidence::from_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ContractViolation("confidence: delta must be in (0, 1)");
  }
  return Confidence(-std::log(delta));
}

Confidence Confidence::at_round(Round t) {
  if (t < 2) throw ContractViolation("confidence: round must be >= 2");
  return Confidence(3.0 * std::log(static_cast<double>(t)));
}

Confidence Confidence::from_log_inv_delta(double log_inv_delta) {
  if (!(log_inv_delta > 0.0) || !std::isfinite(log_inv_delta)) {
    throw ContractViolation("confidence: ln(1/delta) must be positive");
  }
  return Confidence(log_inv_delta);
}

EstimatorSpec EstimatorSpec::truncated(double u, double epsilon,
                                       TruncationLog log_form) {
  EstimatorSpec spec(TruncatedSpec{u, epsilon, log_form});
  validate_spec(spec.kind_);
  return spec;
}

EstimatorSpec EstimatorSpec::filtered_truncated(double mu_max,
                                                double gamma_min) {
  EstimatorSpec spec(FilteredTruncatedSpec{mu_max, gamma_min});
  validate_spec(spec.kind_);
  return spec;
}

double EstimatorSpec::epsilon() const {
  return std::visit(Overloaded{[](const EmpiricalSpec&) { return 1.0; },
                               [](const TruncatedSpec& s) { return s.epsilon; },
                               [](const FilteredTruncatedSpec&) { return 1.0; }},
                    kind_);
}

std::string EstimatorSpec::name() const {
  return std::visit(
      Overloaded{[](const EmpiricalSpec&) { return std::string("empirical"); },
                 [](const TruncatedSpec&) { return std::string("truncated"); },
                 [](const FilteredTruncatedSpec&) {
                   return std::string("filtered_truncated");
                 }},
      kind_);
}

RadiusParams certified_radius_params(const EstimatorSpec& spec) {
  return std::visit(
      Overloaded{[](const EmpiricalSpec&) -> RadiusParams {
                   throw Unsupported(
                       "empirical mean has no certified confidence radius");
                 },
                 [](const TruncatedSpec& s) -> RadiusParams {
                   return {s.epsilon, 4.0, 4.0 * s.u};
                 },
                 [](const FilteredTruncatedSpec& s) -> RadiusParams {
                   const double g = 2.0 / s.gamma_min;
                   const double root_v = g + std::sqrt(g) + 1.0 / 3.0;
                   return {1.0, s.u_max(), root_v * root_v};
                 }},
      spec.kind());
}

void validate(const RadiusParams& p) {
  if (!(p.epsilon > 0.0 && p.epsilon <= 1.0)) {
    throw ContractViolation("radius: epsilon must be in (0, 1]");
  }
  if (!(p.c > 0.0) || !std::isfinite(p.c)) {
    throw ContractViolation("radius: c must be positive");
  }
  if (!(p.v > 0.0) || !std::isfinite(p.v)) {
    throw ContractViolation("radius: v must be positive");
  }
}

double confidence_radius(const RadiusParams& p, std::size_t n,
                         Confidence level) {
  if (n == 0) throw ContractViolation("confidence_radius: n must be >= 1");
  const double e = p.epsilon;
  const double base = p.c * level.log_inv_delta() / static_cast<double>(n);
  if (e == 1.0) return std::sqrt(p.v) * std::sqrt(base);
  return std::pow(p.v, 1.0 / (1.0 + e)) * std::pow(base, e / (1.0 + e));
}

double confidence_radius(const EstimatorSpec& spec, std::size_t n,
                         Confidence level) {
  return confidence_radius(certified_radius_params(spec), n, level);
}

double estimate_empirical(const ObservationHistory& hist) {
  require_nonempty(hist, "estimate_empirical");
  double sum = 0.0;
  for (const auto& o : hist.observations()) sum += o.y / o.gamma;
  return sum / static_cast<double>(hist.count());
}

double estimate_truncated(const ObservationHistory& hist, double u,
                          double epsilon, Confidence level,
                          TruncationLog log_form) {
  require_nonempty(hist, "estimate_truncated");
  const TruncatedSpec s{u, epsilon, log_form};
  validate_spec(EstimatorSpec::Kind{s});
  double sum = 0.0;
  std::size_t t = 0;
  for (const auto& o : hist.observations()) {
    if (o.gamma != 1.0) {
      throw ContractViolation(
          "estimate_truncated: history contains filtered observations");
    }
    sum += truncated_term(s, level, o.y, ++t);
  }
  return sum / static_cast<double>(hist.count());
}

double estimate_filtered_truncated(const ObservationHistory& hist,
                                   double mu_max, Confidence level) {
  require_nonempty(hist, "estimate_filtered_truncated");
  if (!(mu_max > 0.0)) {
    throw ContractViolation("estimate_filtered_truncated: mu_max must be > 0");
  }
  const double u_max = mu_max * mu_max + mu_max;
  double sum = 0.0;
  std::size_t t = 0;
  for (const auto& o : hist.observations()) {
    sum += filtered_term(u_max, level, o, ++t);
  }
  return sum / static_cast<double>(hist.count());
}

double estimate(const EstimatorSpec& spec, const ObservationHistory& hist,
                Confidence level) {
  return std::visit(
      Overloaded{[&](const EmpiricalSpec&) { return estimate_empirical(hist); },
                 [&](const TruncatedSpec& s) {
                   return estimate_truncated(hist, s.u, s.epsilon, level,
                                             s.log_form);
                 },
                 [&](const FilteredTruncatedSpec& s) {
                   return estimate_filtered_truncated(hist, s.mu_max, level);
                 }},
      spec.kind());
}

FixedLevelAccumulator::FixedLevelAccumulator(EstimatorSpec spec,
                                             Confidence level)
    : spec_(std::move(spec)), level_(level) {}

void FixedLevelAccumulator::add(double y, double gamma) {
  if (!(y >= 0.0) || !std::isfinite(y)) {
    throw ContractViolation("accumulator: y must be finite and >= 0");
  }
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw ContractViolation("accumulator: gamma must be in (0, 1]");
  }
  const std::size_t t = ++count_;
  sum_ += std::visit(
      Overloaded{[&](const EmpiricalSpec&) { return y / gamma; },
                 [&](const TruncatedSpec& s) {
                   if (gamma != 1.0) {
                     throw ContractViolation(
                         "accumulator: truncated mean needs gamma = 1");
                   }
                   return truncated_term(s, level_, y, t);
                 },
                 [&](const FilteredTruncatedSpec& s) {
                   return filtered_term(s.u_max(), level_, {y, gamma, t}, t);
                 }},
      spec_.kind());
}

double FixedLevelAccumulator::value() const {
  if (count_ == 0) throw ContractViolation("accumulator: no observations");
  return sum_ / static_cast<double>(count_);
}

}  // namespace fcucb
