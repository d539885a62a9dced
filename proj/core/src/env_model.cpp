#include "fcucb/env_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "fcucb/errors.hpp"

namespace fcucb {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool is_probability(double g) { return g > 0.0 && g <= 1.0; }

double poisson_raw_moment(double mu, double p) {
  if (mu == 0.0) return 0.0;
  if (p == 1.0) return mu;
  if (p == 2.0) return mu * mu + mu;
  // Direct series; terms decay superexponentially past k ~ mu.
  double sum = 0.0;
  double log_pmf = -mu;  // k = 0 contributes 0^p = 0
  const auto limit = static_cast<int>(mu + 40.0 * std::sqrt(mu + 1.0) + 50.0);
  for (int k = 1; k <= limit; ++k) {
    log_pmf += std::log(mu) - std::log(static_cast<double>(k));
    sum += std::exp(log_pmf + p * std::log(static_cast<double>(k)));
  }
  return sum;
}

}  // namespace

UnderlyingDistribution UnderlyingDistribution::poisson(double mu) {
  if (!(mu >= 0.0) || !std::isfinite(mu)) {
    throw ConfigError("poisson arm: mu must be finite and nonnegative");
  }
  return {PoissonArm{mu}, mu};
}

UnderlyingDistribution UnderlyingDistribution::pareto(double shape,
                                                      double scale) {
  if (!(shape > 1.0) || !std::isfinite(shape)) {
    throw ConfigError("pareto arm: shape must be finite and > 1");
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw ConfigError("pareto arm: scale must be finite and positive");
  }
  return {ParetoArm{shape, scale}, shape * scale / (shape - 1.0)};
}

UnderlyingDistribution UnderlyingDistribution::constant(double value) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw ConfigError("constant arm: value must be finite and nonnegative");
  }
  return {ConstantArm{value}, value};
}

bool UnderlyingDistribution::integer_valued() const {
  return std::visit(
      Overloaded{[](const PoissonArm&) { return true; },
                 [](const ParetoArm&) { return false; },
                 [](const ConstantArm& c) {
                   return c.value == std::floor(c.value);
                 }},
      kind_);
}

double UnderlyingDistribution::raw_moment(double p) const {
  if (!(p > 0.0)) throw ContractViolation("raw_moment: p must be positive");
  return std::visit(
      Overloaded{
          [p](const PoissonArm& a) { return poisson_raw_moment(a.mu, p); },
          [p](const ParetoArm& a) {
            if (a.shape <= p) return std::numeric_limits<double>::infinity();
            return a.shape * std::pow(a.scale, p) / (a.shape - p);
          },
          [p](const ConstantArm& a) { return std::pow(a.value, p); }},
      kind_);
}

std::string UnderlyingDistribution::describe() const {
  std::ostringstream out;
  std::visit(Overloaded{[&](const PoissonArm& a) {
                          out << "Poisson(mu=" << a.mu << ")";
                        },
                        [&](const ParetoArm& a) {
                          out << "Pareto(shape=" << a.shape
                              << ", scale=" << a.scale << ")";
                        },
                        [&](const ConstantArm& a) {
                          out << "Constant(" << a.value << ")";
                        }},
             kind_);
  return out.str();
}

double sample_true_outcome(const UnderlyingDistribution& dist,
                           RandomStream& rng) {
  return std::visit(
      Overloaded{[&](const PoissonArm& a) -> double {
                   if (a.mu == 0.0) return 0.0;
                   std::poisson_distribution<std::int64_t> d(a.mu);
                   return static_cast<double>(d(rng));
                 },
                 [&](const ParetoArm& a) -> double {
                   // Inverse CDF on (0, 1].
                   const double u = 1.0 - rng.uniform01();
                   return a.scale * std::pow(u, -1.0 / a.shape);
                 },
                 [](const ConstantArm& a) -> double { return a.value; }},
      dist.kind());
}

DetectionModel DetectionModel::size_rule(std::vector<double> gamma_by_size,
                                         std::optional<double> gamma_min) {
  if (gamma_by_size.empty()) {
    throw ConfigError("detection size rule: needs at least one size");
  }
  for (std::size_t s = 0; s < gamma_by_size.size(); ++s) {
    if (!is_probability(gamma_by_size[s])) {
      throw ConfigError("detection size rule: gamma for |S|=" +
                        std::to_string(s + 1) + " must be in (0, 1]");
    }
    if (s > 0 && gamma_by_size[s] > gamma_by_size[s - 1]) {
      throw ConfigError(
          "detection size rule: must be nonincreasing in |S| (size " +
          std::to_string(s + 1) + ")");
    }
  }
  DetectionModel model;
  model.by_size_ = std::move(gamma_by_size);
  const double smallest = model.by_size_.back();
  if (gamma_min) {
    if (!is_probability(*gamma_min)) {
      throw ConfigError("detection: gamma_min must be in (0, 1]");
    }
    if (smallest < *gamma_min) {
      throw ConfigError("detection size rule: produces gamma below gamma_min");
    }
    model.gamma_min_ = *gamma_min;
  } else {
    model.gamma_min_ = smallest;
  }
  return model;
}

DetectionModel DetectionModel::inverse_size(std::size_t max_size) {
  std::vector<double> gammas(max_size);
  for (std::size_t s = 1; s <= max_size; ++s) {
    gammas[s - 1] = 1.0 / static_cast<double>(s);
  }
  return size_rule(std::move(gammas));
}

DetectionModel DetectionModel::table(std::map<TableKey, double> entries,
                                     std::optional<double> gamma_min) {
  if (entries.empty()) throw ConfigError("detection table: no entries");
  double smallest = 1.0;
  for (const auto& [key, g] : entries) {
    if (!is_probability(g)) {
      throw ConfigError("detection table: gamma for arm " +
                        std::to_string(key.first) + ", combination " +
                        std::to_string(key.second) + " must be in (0, 1]");
    }
    smallest = std::min(smallest, g);
  }
  DetectionModel model;
  model.table_ = std::move(entries);
  if (gamma_min) {
    if (!is_probability(*gamma_min)) {
      throw ConfigError("detection: gamma_min must be in (0, 1]");
    }
    if (smallest < *gamma_min) {
      throw ConfigError("detection table: entry below gamma_min");
    }
    model.gamma_min_ = *gamma_min;
  } else {
    model.gamma_min_ = smallest;
  }
  return model;
}

DetectionModel DetectionModel::certain() {
  DetectionModel model;
  model.certain_ = true;
  return model;
}

double DetectionModel::gamma(ArmId arm, PlayedCombination played) const {
  if (certain_) return 1.0;
  if (!table_.empty()) {
    const auto it = table_.find({arm, played.id});
    if (it == table_.end()) {
      throw ConfigError("detection table: no entry for arm " +
                        std::to_string(arm) + ", combination " +
                        std::to_string(played.id));
    }
    return it->second;
  }
  if (played.size == 0 || played.size > by_size_.size()) {
    throw ConfigError("detection size rule: no value for |S|=" +
                      std::to_string(played.size));
  }
  return by_size_[played.size - 1];
}

FilterModel FilterModel::binomial(DetectionModel detection) {
  FilterModel f;
  f.detection_ = std::move(detection);
  return f;
}

double FilterModel::gamma(ArmId arm, PlayedCombination played) const {
  return detection_ ? detection_->gamma(arm, played) : 1.0;
}

std::uint64_t binomial_thin(std::uint64_t x, double gamma, RandomStream& rng) {
  if (!is_probability(gamma)) {
    throw ContractViolation("binomial_thin: gamma must be in (0, 1]");
  }
  if (x == 0 || gamma == 1.0) return x;
  std::binomial_distribution<std::uint64_t> d(x, gamma);
  return d(rng);
}

double apply_filter(const FilterModel& filter, double x, ArmId arm,
                    PlayedCombination played, RandomStream& rng) {
  if (!(x >= 0.0)) throw ContractViolation("apply_filter: x must be >= 0");
  if (filter.is_identity()) return x;
  if (x != std::floor(x) || !std::isfinite(x)) {
    throw ContractViolation(
        "apply_filter: binomial filtering needs an integer outcome");
  }
  const double g = filter.gamma(arm, played);
  return static_cast<double>(
      binomial_thin(static_cast<std::uint64_t>(x), g, rng));
}

double marginal_filtered_mean(const UnderlyingDistribution& dist,
                              double gamma) {
  if (!is_probability(gamma)) {
    throw ContractViolation("marginal_filtered_mean: gamma must be in (0, 1]");
  }
  return gamma * dist.mean();
}

}  // namespace fcucb
