#include "fcucb/regret.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "fcucb/errors.hpp"

namespace fcucb {
namespace {

void require_bound_inputs(const GapStats& gaps, std::size_t k, double n) {
  if (!gaps.defined()) {
    throw BoundUnavailable(
        "regret bound: every combination is optimal, so the gaps are "
        "undefined");
  }
  if (k == 0) throw ContractViolation("regret bound: k must be positive");
  if (!(n >= 1.0)) throw ContractViolation("regret bound: n must be >= 1");
}

double constant_tail() { return std::numbers::pi * std::numbers::pi / 3.0 + 1.0; }

}  // namespace

std::optional<ArmId> NCounters::update(std::span<const ArmId> played,
                                       bool optimal, TieBreak ties,
                                       RandomStream* rng) {
  if (optimal || played.empty()) return std::nullopt;
  std::uint64_t lowest = values_.at(played.front());
  for (ArmId a : played) lowest = std::min(lowest, values_.at(a));
  std::vector<ArmId> minimisers;
  for (ArmId a : played) {
    if (values_[a] == lowest) minimisers.push_back(a);
  }
  ArmId chosen = minimisers.front();
  if (minimisers.size() > 1 && ties == TieBreak::Random) {
    if (rng == nullptr) {
      throw ContractViolation("NCounters: random tie-break needs a stream");
    }
    std::uniform_int_distribution<std::size_t> pick(0, minimisers.size() - 1);
    chosen = minimisers[pick(*rng)];
  }
  ++values_[chosen];
  return chosen;
}

std::uint64_t NCounters::total() const {
  std::uint64_t sum = 0;
  for (auto v : values_) sum += v;
  return sum;
}

RegretReport::RegretReport(std::size_t k, std::uint64_t replication,
                           TieBreak ties)
    : replication_(replication), ties_(ties), ncounters_(k), plays_(k, 0) {}

void RegretReport::record(const RoundLog& log, const StreamFactory& streams) {
  if (log.t != entries_.size() + 1) {
    throw ContractViolation("RegretReport: rounds must be recorded in order");
  }
  RegretEntry e;
  e.t = log.t;
  e.combination = log.combination;
  e.realized_reward = log.realized_reward;
  e.expected_reward = log.expected_reward;
  e.instant_regret = log.instant_regret;
  e.cumulative_regret = cumulative_regret() + log.instant_regret;
  e.loop_phase = log.loop_phase;
  e.optimal = log.optimal;
  entries_.push_back(e);

  for (ArmId a : log.arms) ++plays_.at(a);
  if (log.loop_phase) {
    if (!log.optimal) ++suboptimal_loop_;
    std::optional<RandomStream> tie_rng;
    if (!log.optimal && ties_ == TieBreak::Random) {
      tie_rng.emplace(
          streams.stream({replication_, log.t, 0, StreamPurpose::TieBreak}));
    }
    ncounters_.update(log.arms, log.optimal, ties_,
                      tie_rng ? &*tie_rng : nullptr);
  }
}

double RegretReport::cumulative_regret() const {
  return entries_.empty() ? 0.0 : entries_.back().cumulative_regret;
}

double RegretReport::cumulative_regret_at(Round t) const {
  if (t == 0) return 0.0;
  if (t > entries_.size()) {
    throw ContractViolation("RegretReport: round beyond the recorded horizon");
  }
  return entries_[t - 1].cumulative_regret;
}

double theorem1_bound(const RadiusParams& params, const GapStats& gaps,
                      const LinearSmoothness& smooth, std::size_t k,
                      double n) {
  require_bound_inputs(gaps, k, n);
  validate(params);
  const double e = params.epsilon;
  const double lead = 3.0 * params.c * std::pow(params.v, 1.0 / e) *
                      std::pow(2.0 / smooth.inverse(*gaps.delta_min),
                               (1.0 + e) / e) *
                      std::log(n);
  return (lead + constant_tail()) * static_cast<double>(k) * *gaps.delta_max;
}

double prop2_bound(double u, double epsilon, const GapStats& gaps,
                   const LinearSmoothness& smooth, std::size_t k, double n) {
  require_bound_inputs(gaps, k, n);
  if (!(u > 0.0)) throw ContractViolation("prop2_bound: u must be positive");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw ContractViolation("prop2_bound: epsilon must be in (0, 1]");
  }
  const double lead = 12.0 * std::pow(4.0 * u, 1.0 / epsilon) *
                      std::pow(2.0 / smooth.inverse(*gaps.delta_min),
                               (1.0 + epsilon) / epsilon) *
                      std::log(n);
  return (lead + constant_tail()) * static_cast<double>(k) * *gaps.delta_max;
}

double prop4_bound(double mu_max, double gamma_min, const GapStats& gaps,
                   const LinearSmoothness& smooth, std::size_t k, double n) {
  require_bound_inputs(gaps, k, n);
  if (!(mu_max > 0.0)) {
    throw ContractViolation("prop4_bound: mu_max must be positive");
  }
  if (!(gamma_min > 0.0 && gamma_min <= 1.0)) {
    throw ContractViolation("prop4_bound: gamma_min must be in (0, 1]");
  }
  const double g = 2.0 / gamma_min;
  const double width = g + std::sqrt(g) + 1.0 / 3.0;
  const double finv = smooth.inverse(*gaps.delta_min);
  const double lead = 12.0 * (mu_max * mu_max + mu_max) * width * width /
                      (finv * finv) * std::log(n);
  return (lead + constant_tail()) * static_cast<double>(k) * *gaps.delta_max;
}

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::Theorem1:
      return "theorem1";
    case BoundKind::Prop2:
      return "prop2";
    case BoundKind::Prop4:
      return "prop4";
  }
  return "unknown";
}

BoundSelector BoundSelector::for_policy(const IndexPolicyConfig& config) {
  BoundSelector sel;
  sel.estimator = config.estimator;
  if (config.radius) {
    sel.kind = BoundKind::Theorem1;
    sel.params = *config.radius;
    return sel;
  }
  sel.params = certified_radius_params(config.estimator);
  if (std::holds_alternative<TruncatedSpec>(config.estimator.kind())) {
    sel.kind = BoundKind::Prop2;
  } else if (std::holds_alternative<FilteredTruncatedSpec>(
                 config.estimator.kind())) {
    sel.kind = BoundKind::Prop4;
  }
  return sel;
}

double BoundSelector::evaluate(const GapStats& gaps,
                               const LinearSmoothness& smooth, std::size_t k,
                               double n) const {
  switch (kind) {
    case BoundKind::Prop2: {
      const auto& s = std::get<TruncatedSpec>(estimator.kind());
      return prop2_bound(s.u, s.epsilon, gaps, smooth, k, n);
    }
    case BoundKind::Prop4: {
      const auto& s = std::get<FilteredTruncatedSpec>(estimator.kind());
      return prop4_bound(s.mu_max, s.gamma_min, gaps, smooth, k, n);
    }
    case BoundKind::Theorem1:
      break;
  }
  return theorem1_bound(params, gaps, smooth, k, n);
}

}  // namespace fcucb
