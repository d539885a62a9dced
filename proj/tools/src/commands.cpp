#include "fcucb_cli/commands.hpp"

#include <filesystem>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "fcucb/errors.hpp"
#include "fcucb_cli/output.hpp"
#include "json.hpp"

namespace fcucb::cli {
namespace {

using ordered = nlohmann::ordered_json;

std::string combination_label(const Combination& c) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += '+';
    s += std::to_string(c[i] + 1);
  }
  return s;
}

ordered combination_json(const Combination& c) {
  ordered out = ordered::array();
  for (ArmId a : c) out.push_back(a + 1);
  return out;
}

PolicyFactory policy_factory(const SimulationConfig& config) {
  switch (config.policy) {
    case PolicyKind::RobustFcucb:
    case PolicyKind::EmpiricalCucb: {
      const IndexPolicyConfig cfg = *config.index;
      return [cfg](const ProblemInstance& p) -> std::unique_ptr<Policy> {
        return std::make_unique<IndexPolicy>(p, cfg);
      };
    }
    case PolicyKind::OptimalOracle:
      return [](const ProblemInstance& p) -> std::unique_ptr<Policy> {
        return std::make_unique<OptimalOraclePolicy>(p);
      };
    case PolicyKind::UniformRandom:
      return [](const ProblemInstance& p) -> std::unique_ptr<Policy> {
        return std::make_unique<UniformRandomPolicy>(p);
      };
  }
  throw ContractViolation("unknown policy kind");
}

/// The regret bound that applies to the configured policy, if any. Only
/// robust estimators come with a concentration guarantee.
std::optional<BoundSelector> applicable_bound(const SimulationConfig& config) {
  if (config.policy != PolicyKind::RobustFcucb) return std::nullopt;
  if (!config.instance.gaps().defined()) return std::nullopt;
  return BoundSelector::for_policy(*config.index);
}

std::string rounds_csv(const SimulationConfig& config,
                       const std::vector<ReplicationResult>& runs) {
  const auto& space = config.instance.space();
  std::vector<std::string> labels;
  labels.reserve(space.size());
  for (const auto& c : space.combinations()) labels.push_back(combination_label(c));

  std::string out = "rep,t,combination,realized_reward,expected_reward,instant_regret,cum_regret\n";
  out.reserve(out.size() + runs.size() * config.horizon * 48);
  for (const auto& run : runs) {
    const std::string rep = std::to_string(run.report.replication());
    for (const auto& e : run.report.entries()) {
      out += rep;
      out += ',';
      out += std::to_string(e.t);
      out += ',';
      out += labels[e.combination];
      out += ',';
      append_double(out, e.realized_reward);
      out += ',';
      append_double(out, e.expected_reward);
      out += ',';
      append_double(out, e.instant_regret);
      out += ',';
      append_double(out, e.cumulative_regret);
      out += '\n';
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> simulation_warnings(const SimulationConfig& config) {
  std::vector<std::string> w;
  if (!config.index) return w;
  const auto& inst = config.instance;
  const auto& est = config.index->estimator;
  if (const auto* f = std::get_if<FilteredTruncatedSpec>(&est.kind())) {
    if (inst.max_mean() > f->mu_max) {
      w.push_back("largest arm mean " + format_double(inst.max_mean()) +
                  " exceeds the estimator's mu_max " + format_double(f->mu_max));
    }
    if (f->gamma_min > inst.effective_gamma_min()) {
      w.push_back("estimator gamma_min " + format_double(f->gamma_min) +
                  " is above the smallest detection probability " +
                  format_double(inst.effective_gamma_min()));
    }
    for (std::size_t i = 0; i < inst.arm_count(); ++i) {
      if (std::holds_alternative<ParetoArm>(inst.arms()[i].kind())) {
        w.push_back("arm " + std::to_string(i + 1) +
                    " is not Poisson; the filtered truncated guarantee assumes Poisson arms");
      }
    }
  } else if (const auto* t = std::get_if<TruncatedSpec>(&est.kind())) {
    for (std::size_t i = 0; i < inst.arm_count(); ++i) {
      const double m = inst.arms()[i].raw_moment(1.0 + t->epsilon);
      if (m > t->u) {
        w.push_back("arm " + std::to_string(i + 1) + " has E|X|^(1+eps) = " +
                    format_double(m) + " > u = " + format_double(t->u));
      }
    }
  }
  if (config.index->radius && config.policy == PolicyKind::RobustFcucb) {
    w.push_back("index constants were overridden; the reported bound uses them as given");
  }
  return w;
}

SimulationOutcome simulate(const SimulationConfig& config) {
  SimulationOutcome out;
  out.warnings = simulation_warnings(config);

  SimulationOptions opt;
  opt.horizon = config.horizon;
  opt.replications = config.replications;
  opt.root_seed = config.seed;
  opt.ties = config.ties;
  opt.threads = config.threads;
  out.runs = run_replications(config.instance, policy_factory(config), opt);
  out.checkpoints = summarize_checkpoints(out.runs, config.checkpoints);
  if (config.write_rounds) out.rounds_csv = rounds_csv(config, out.runs);

  const auto& inst = config.instance;
  const auto& gaps = inst.gaps();
  const auto bound = applicable_bound(config);
  const auto smooth = inst.smoothness();

  ordered summary;
  summary["command"] = "simulate";
  summary["policy"] = to_string(config.policy);
  summary["seed"] = config.seed;
  summary["config_digest"] = config_digest(config.canonical);
  summary["horizon"] = config.horizon;
  summary["replications"] = config.replications;
  summary["initialisation_length"] =
      out.runs.empty() ? 0 : out.runs.front().initialisation_length;

  ordered g;
  g["opt"] = gaps.opt;
  g["delta_min"] = gaps.delta_min ? ordered(*gaps.delta_min) : ordered(nullptr);
  g["delta_max"] = gaps.delta_max ? ordered(*gaps.delta_max) : ordered(nullptr);
  ordered optimal = ordered::array();
  for (auto id : gaps.optimal_ids) optimal.push_back(combination_json(inst.space()[id]));
  g["optimal_combinations"] = optimal;
  summary["gaps"] = g;

  if (bound) {
    summary["bound"] = {{"kind", to_string(bound->kind)},
                        {"epsilon", bound->params.epsilon},
                        {"c", bound->params.c},
                        {"v", bound->params.v},
                        {"smoothness_slope", smooth.slope}};
  } else {
    summary["bound"] = nullptr;
  }

  ordered cps = ordered::array();
  for (const auto& s : out.checkpoints) {
    ordered row{{"t", s.t},
                {"mean_cum_regret", s.mean_cumulative_regret},
                {"stderr_cum_regret", s.stderr_cumulative_regret}};
    if (bound) {
      row["bound"] = bound->evaluate(gaps, smooth, inst.arm_count(), static_cast<double>(s.t));
    }
    cps.push_back(row);
  }
  summary["checkpoints"] = cps;

  ordered reps = ordered::array();
  for (const auto& run : out.runs) {
    const auto& r = run.report;
    ordered plays = ordered::array();
    for (auto p : r.plays()) plays.push_back(p);
    ordered counters = ordered::array();
    for (auto v : r.ncounters().values()) counters.push_back(v);
    reps.push_back({{"rep", r.replication()},
                    {"cum_regret", r.cumulative_regret()},
                    {"suboptimal_loop_plays", r.suboptimal_loop_plays()},
                    {"ncounters", counters},
                    {"plays", plays}});
  }
  summary["replication_stats"] = reps;
  summary["warnings"] = out.warnings;
  out.summary_json = summary.dump(2) + "\n";
  return out;
}

ConcentrationOutcome concentrate(const ConcentrationConfig& config) {
  ConcentrationOutcome out;
  out.result = run_concentration(config.experiment);
  const auto& r = out.result;
  ordered j;
  j["radius"] = r.radius;
  j["delta"] = config.experiment.delta;
  j["upperFreq"] = r.upper_freq;
  j["lowerFreq"] = r.lower_freq;
  j["tolerance"] = r.tolerance;
  j["reps"] = config.experiment.reps;
  j["n"] = config.experiment.n;
  j["estimator"] = config.experiment.estimator.name();
  j["seed"] = config.experiment.seed;
  j["config_digest"] = config_digest(config.canonical);
  j["pass"] = r.pass;
  j["warnings"] = r.warnings;
  out.json = j.dump(2) + "\n";
  return out;
}

double evaluate_bound(const BoundRequest& req) {
  auto need = [](const std::optional<double>& v, const char* flag) {
    if (!v) throw ConfigError(std::string("--") + flag + ": required for this bound");
    return *v;
  };
  if (!(req.delta_min > 0)) throw ConfigError("--delta-min: must be > 0");
  if (req.delta_max < req.delta_min) throw ConfigError("--delta-max: must be >= --delta-min");
  if (req.k < 1) throw ConfigError("--k: must be >= 1");
  if (!(req.n >= 1)) throw ConfigError("--n: must be >= 1");
  const double slope = req.slope.value_or(static_cast<double>(req.k));
  if (!(slope > 0)) throw ConfigError("--slope: must be > 0");

  GapStats gaps;
  gaps.delta_min = req.delta_min;
  gaps.delta_max = req.delta_max;
  const LinearSmoothness f{slope};
  try {
    switch (req.kind) {
      case BoundKind::Theorem1: {
        const double eps = need(req.epsilon, "epsilon");
        const double c = need(req.c, "c");
        const double v = need(req.v, "v");
        return theorem1_bound({eps, c, v}, gaps, f, req.k, req.n);
      }
      case BoundKind::Prop2: {
        const double u = need(req.u, "u");
        const double eps = need(req.epsilon, "epsilon");
        return prop2_bound(u, eps, gaps, f, req.k, req.n);
      }
      case BoundKind::Prop4: {
        const double mu_max = need(req.mu_max, "mu-max");
        const double gamma_min = need(req.gamma_min, "gamma-min");
        return prop4_bound(mu_max, gamma_min, gaps, f, req.k, req.n);
      }
    }
  } catch (const ContractViolation& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("--kind: unknown bound");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Combinatorial bandits with filtered feedback: simulation and analysis", "fcucb"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::string out_dir = ".";

  auto* sim = app.add_subcommand("simulate", "Run replications of a policy on an instance");
  auto* conc = app.add_subcommand("concentration", "Monte Carlo check of an estimator's radius");
  for (auto* sub : {sim, conc}) {
    sub->add_option("--config", config_path, "JSON configuration file")->required();
    sub->add_option("--seed", seed, "Override the root seed");
    sub->add_option("--out-dir", out_dir, "Directory for output files");
  }
  sim->add_option("--threads", threads, "Replications run in parallel")
      ->check(CLI::Range(1u, 1024u));

  BoundRequest req;
  std::string kind = "theorem1";
  auto* bnd = app.add_subcommand("bound", "Evaluate a regret bound");
  bnd->add_option("--kind", kind, "theorem1, prop2 or prop4")
      ->check(CLI::IsMember({"theorem1", "prop2", "prop4"}));
  bnd->add_option("--epsilon", req.epsilon);
  bnd->add_option("--c", req.c);
  bnd->add_option("--v", req.v);
  bnd->add_option("--u", req.u);
  bnd->add_option("--mu-max", req.mu_max);
  bnd->add_option("--gamma-min", req.gamma_min);
  bnd->add_option("--delta-min", req.delta_min)->required();
  bnd->add_option("--delta-max", req.delta_max)->required();
  bnd->add_option("--k", req.k)->required();
  bnd->add_option("--n", req.n)->required();
  bnd->add_option("--slope", req.slope, "Smoothness slope (default k)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*bnd) {
      req.kind = kind == "prop2"   ? BoundKind::Prop2
                 : kind == "prop4" ? BoundKind::Prop4
                                   : BoundKind::Theorem1;
      out << format_significant(evaluate_bound(req)) << "\n";
      return kExitOk;
    }

    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);

    if (*sim) {
      auto cfg = load_simulation_config(config_path);
      if (seed) set_seed(cfg, *seed);
      if (threads) cfg.threads = *threads;
      const auto res = simulate(cfg);
      for (const auto& w : res.warnings) err << "warning: " << w << "\n";
      if (cfg.write_rounds) write_file((dir / cfg.rounds_file).string(), res.rounds_csv);
      write_file((dir / cfg.summary_file).string(), res.summary_json);
      const auto& last = res.checkpoints.back();
      out << "mean cumulative regret at t=" << last.t << ": "
          << format_significant(last.mean_cumulative_regret, 6) << " (se "
          << format_significant(last.stderr_cumulative_regret, 3) << ")\n";
      return kExitOk;
    }

    auto cfg = load_concentration_config(config_path);
    if (seed) set_seed(cfg, *seed);
    const auto res = concentrate(cfg);
    for (const auto& w : res.result.warnings) err << "warning: " << w << "\n";
    write_file((dir / cfg.output_file).string(), res.json);
    out << "radius " << format_significant(res.result.radius, 6) << ", upper "
        << format_double(res.result.upper_freq) << ", lower "
        << format_double(res.result.lower_freq) << ", tolerance "
        << format_significant(res.result.tolerance, 4) << ": "
        << (res.result.pass ? "pass" : "FAIL") << "\n";
    return res.result.pass ? kExitOk : kExitFailed;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailed;
  }
}

}  // namespace fcucb::cli
