#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fcucb/concentration.hpp"
#include "fcucb/simulation.hpp"
#include "fcucb_cli/config.hpp"

namespace fcucb::cli {

/// Exit codes of the fcucb tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  ///< ran, but a check did not pass
inline constexpr int kExitConfig = 2;  ///< bad configuration or arguments

struct SimulationOutcome {
  std::vector<ReplicationResult> runs;
  std::vector<CheckpointStats> checkpoints;
  /// Per-round CSV; empty when the config turns it off.
  std::string rounds_csv;
  std::string summary_json;
  std::vector<std::string> warnings;
};

/// Runs the configured replications and renders both artifacts. No I/O.
SimulationOutcome simulate(const SimulationConfig& config);

/// Hypothesis checks for the configured estimator against the instance.
std::vector<std::string> simulation_warnings(const SimulationConfig& config);

struct ConcentrationOutcome {
  ConcentrationResult result;
  std::string json;
};

ConcentrationOutcome concentrate(const ConcentrationConfig& config);

struct BoundRequest {
  BoundKind kind = BoundKind::Theorem1;
  std::optional<double> epsilon, c, v;  // theorem1; epsilon also for prop2
  std::optional<double> u;              // prop2
  std::optional<double> mu_max, gamma_min;  // prop4
  double delta_min = 0.0;
  double delta_max = 0.0;
  std::size_t k = 1;
  double n = 1.0;
  /// Smoothness slope; defaults to k.
  std::optional<double> slope;
};

/// Throws ConfigError when a parameter the kind needs is missing.
double evaluate_bound(const BoundRequest& request);

/// Full command line without the program name, e.g.
/// {"simulate", "--config", "run.json"}. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fcucb::cli
