#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "fcucb/policy.hpp"
#include "fcucb/problem.hpp"
#include "fcucb/regret.hpp"

namespace fcucb {

using PolicyFactory =
    std::function<std::unique_ptr<Policy>(const ProblemInstance&)>;

struct SimulationOptions {
  Round horizon = 1000;
  std::size_t replications = 1;
  std::uint64_t root_seed = 1;
  TieBreak ties = TieBreak::Random;
  unsigned threads = 1;
};

struct ReplicationResult {
  RegretReport report;
  std::size_t initialisation_length = 0;
};

/// One independent run of `horizon` rounds on replication `replication`'s
/// streams.
ReplicationResult run_replication(const ProblemInstance& instance,
                                  const PolicyFactory& make_policy,
                                  const StreamFactory& streams,
                                  std::uint64_t replication, Round horizon,
                                  TieBreak ties);

/// Runs replications 0..R-1, up to `threads` at a time. The result is
/// ordered by replication and independent of the thread count.
std::vector<ReplicationResult> run_replications(
    const ProblemInstance& instance, const PolicyFactory& make_policy,
    const SimulationOptions& options);

struct CheckpointStats {
  Round t = 0;
  double mean_cumulative_regret = 0.0;
  double stderr_cumulative_regret = 0.0;
};

/// Across-replication mean and standard error of cumulative regret.
std::vector<CheckpointStats> summarize_checkpoints(
    std::span<const ReplicationResult> runs, std::span<const Round> checkpoints);

/// Mean over replications of the average instant regret in rounds (lo, hi].
double mean_window_regret(std::span<const ReplicationResult> runs, Round lo,
                          Round hi);

}  // namespace fcucb
