#include "fcucb/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include "fcucb/errors.hpp"

namespace fcucb {

ReplicationResult run_replication(const ProblemInstance& instance,
                                  const PolicyFactory& make_policy,
                                  const StreamFactory& streams,
                                  std::uint64_t replication, Round horizon,
                                  TieBreak ties) {
  auto policy = make_policy(instance);
  if (horizon <= policy->initialisation_length()) {
    throw ConfigError("horizon must exceed the initialisation length (" +
                      std::to_string(policy->initialisation_length()) + ")");
  }
  ReplicationResult result{RegretReport(instance.arm_count(), replication, ties),
                           policy->initialisation_length()};
  for (Round t = 1; t <= horizon; ++t) {
    const RoundLog log = step(*policy, instance, t, streams, replication);
    result.report.record(log, streams);
  }
  return result;
}

std::vector<ReplicationResult> run_replications(
    const ProblemInstance& instance, const PolicyFactory& make_policy,
    const SimulationOptions& options) {
  if (options.replications == 0) {
    throw ConfigError("replications must be >= 1");
  }
  const StreamFactory streams(options.root_seed);
  std::vector<std::optional<ReplicationResult>> slots(options.replications);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    while (true) {
      const std::size_t rep = next.fetch_add(1);
      if (rep >= options.replications) return;
      try {
        slots[rep].emplace(run_replication(instance, make_policy, streams, rep,
                                           options.horizon, options.ties));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(options.replications);
        return;
      }
    }
  };

  const unsigned threads = std::clamp<unsigned>(
      options.threads, 1u, static_cast<unsigned>(options.replications));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<ReplicationResult> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<CheckpointStats> summarize_checkpoints(
    std::span<const ReplicationResult> runs,
    std::span<const Round> checkpoints) {
  std::vector<CheckpointStats> out;
  if (runs.empty()) return out;
  const double r = static_cast<double>(runs.size());
  for (Round t : checkpoints) {
    double sum = 0.0;
    for (const auto& run : runs) sum += run.report.cumulative_regret_at(t);
    const double mean = sum / r;
    double ss = 0.0;
    for (const auto& run : runs) {
      const double d = run.report.cumulative_regret_at(t) - mean;
      ss += d * d;
    }
    const double se = runs.size() > 1 ? std::sqrt(ss / (r - 1.0) / r) : 0.0;
    out.push_back({t, mean, se});
  }
  return out;
}

double mean_window_regret(std::span<const ReplicationResult> runs, Round lo,
                          Round hi) {
  if (hi <= lo) throw ContractViolation("mean_window_regret: empty window");
  double sum = 0.0;
  for (const auto& run : runs) {
    sum += run.report.cumulative_regret_at(hi) -
           run.report.cumulative_regret_at(lo);
  }
  return sum / static_cast<double>(runs.size()) /
         static_cast<double>(hi - lo);
}

}  // namespace fcucb
