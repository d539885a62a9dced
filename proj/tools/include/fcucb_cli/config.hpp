#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fcucb/concentration.hpp"
#include "fcucb/policy.hpp"
#include "fcucb/problem.hpp"
#include "fcucb/regret.hpp"

namespace fcucb::cli {

enum class PolicyKind { RobustFcucb, EmpiricalCucb, OptimalOracle, UniformRandom };

std::string to_string(PolicyKind kind);

/// A parsed `simulate` configuration. Arms are numbered from 1 in the file
/// and from 0 here.
struct SimulationConfig {
  explicit SimulationConfig(ProblemInstance inst) : instance(std::move(inst)) {}

  ProblemInstance instance;
  PolicyKind policy = PolicyKind::RobustFcucb;
  /// Set for the two index policies.
  std::optional<IndexPolicyConfig> index;
  TieBreak ties = TieBreak::Random;
  Round horizon = 0;
  std::size_t replications = 1;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  /// Sorted, unique, all within [1, horizon].
  std::vector<Round> checkpoints;
  bool write_rounds = true;
  std::string rounds_file = "rounds.csv";
  std::string summary_file = "summary.json";
  /// Normalised semantic content (defaults filled in, no output paths or
  /// thread count). The digest is computed over this.
  std::string canonical;
};

struct ConcentrationConfig {
  ConcentrationExperiment experiment;
  std::string output_file = "concentration.json";
  std::string canonical;
};

/// Parsers throw ConfigError with a message that starts with the path of
/// the offending field, e.g. "instance.arms[2].mu: must be >= 0".
SimulationConfig parse_simulation_config(const std::string& text);
ConcentrationConfig parse_concentration_config(const std::string& text);

SimulationConfig load_simulation_config(const std::filesystem::path& path);
ConcentrationConfig load_concentration_config(const std::filesystem::path& path);

/// Re-derives the canonical form after a command-line override.
void set_seed(SimulationConfig& config, std::uint64_t seed);
void set_seed(ConcentrationConfig& config, std::uint64_t seed);

/// 64-bit FNV-1a of the canonical form, as 16 hex digits.
std::string config_digest(const std::string& canonical);

/// Multiples of horizon/10 together with the powers of ten below the
/// horizon.
std::vector<Round> default_checkpoints(Round horizon);

}  // namespace fcucb::cli
