#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fcucb/errors.hpp"
#include "fcucb_cli/commands.hpp"
#include "fcucb_cli/config.hpp"
#include "json.hpp"

using namespace fcucb;
using namespace fcucb::cli;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kConfigDir = FCUCB_CONFIG_DIR;

json base_config() {
  return json::parse(R"({
    "instance": {
      "arms": [{"type": "poisson", "mu": 1}, {"type": "poisson", "mu": 2},
               {"type": "poisson", "mu": 3}],
      "actions": {"max_size": 2},
      "filter": {"type": "binomial", "detection": {"rule": "inverse_size"}}
    },
    "policy": {"kind": "robust_fcucb",
               "estimator": {"kind": "filtered_truncated", "mu_max": 3}},
    "horizon": 300,
    "replications": 3,
    "seed": 9
  })");
}

std::string error_of(const json& cfg) {
  try {
    parse_simulation_config(cfg.dump());
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("fcucb_cli_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  [[nodiscard]] const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

int run_cli(std::vector<std::string> args, std::string* out = nullptr,
            std::string* err = nullptr) {
  std::ostringstream o, e;
  const int code = run(args, o, e);
  if (out) *out = o.str();
  if (err) *err = e.str();
  return code;
}

}  // namespace

TEST(Config, ParsesReferenceInstance) {
  const auto cfg = parse_simulation_config(base_config().dump());
  EXPECT_EQ(cfg.instance.arm_count(), 3u);
  EXPECT_EQ(cfg.instance.space().size(), 6u);
  EXPECT_DOUBLE_EQ(*cfg.instance.gaps().delta_min, 0.5);
  EXPECT_EQ(cfg.policy, PolicyKind::RobustFcucb);
  ASSERT_TRUE(cfg.index.has_value());
  // gamma_min defaults to the smallest detection probability in use.
  const auto& est = std::get<FilteredTruncatedSpec>(cfg.index->estimator.kind());
  EXPECT_EQ(est.gamma_min, 0.5);
  EXPECT_EQ(cfg.index->init, InitMode::Strict);
  EXPECT_EQ(cfg.checkpoints.back(), 300u);
}

TEST(Config, ErrorsNameTheOffendingField) {
  auto c = base_config();
  c["instance"]["arms"][1]["mu"] = -1;
  EXPECT_EQ(error_of(c).rfind("instance.arms[1].mu:", 0), 0u) << error_of(c);

  c = base_config();
  c["instance"]["arms"][0]["rate"] = 1;
  EXPECT_EQ(error_of(c).rfind("instance.arms[0].rate: unknown field", 0), 0u);

  c = base_config();
  c["horizon"] = 3;
  EXPECT_EQ(error_of(c).rfind("horizon:", 0), 0u);

  c = base_config();
  c.erase("horizon");
  EXPECT_EQ(error_of(c).rfind("horizon: required", 0), 0u);

  c = base_config();
  c["policy"]["estimator"]["kind"] = "median";
  EXPECT_EQ(error_of(c).rfind("policy.estimator.kind:", 0), 0u);

  c = base_config();
  c["instance"]["actions"] = {{"combinations", {{1, 2}, {4}}}};
  EXPECT_EQ(error_of(c).rfind("instance.actions.combinations[1][0]:", 0), 0u);

  c = base_config();
  c["instance"]["actions"] = {{"combinations", {{1, 2}}}};
  EXPECT_NE(error_of(c).find("arm 3"), std::string::npos);

  c = base_config();
  c["checkpoints"] = {5, 301};
  EXPECT_EQ(error_of(c).rfind("checkpoints[1]:", 0), 0u);

  c = base_config();
  c["policy"]["kind"] = "empirical_cucb";
  c["policy"].erase("estimator");
  EXPECT_EQ(error_of(c).rfind("policy.radius:", 0), 0u);

  c = base_config();
  c["policy"]["estimator"] = {{"kind", "truncated"}, {"u", 4}, {"epsilon", 1}};
  EXPECT_EQ(error_of(c).rfind("policy:", 0), 0u);  // needs unfiltered feedback

  c = base_config();
  c["instance"]["arms"][0] = {{"type", "pareto"}, {"shape", 3}, {"scale", 1}};
  EXPECT_EQ(error_of(c).rfind("instance:", 0), 0u);  // binomial needs integers

  EXPECT_EQ(error_of(json::parse("[1]")).rfind("config:", 0), 0u);
  EXPECT_THROW(parse_simulation_config("{not json"), ConfigError);
}

TEST(Config, TableDetection) {
  auto c = base_config();
  c["instance"]["actions"] = {{"combinations", {{1}, {2, 3}}}};
  c["instance"]["filter"]["detection"] = {
      {"rule", "table"},
      {"entries",
       {{{"arm", 1}, {"combination", {1}}, {"gamma", 0.9}},
        {{"arm", 2}, {"combination", {2, 3}}, {"gamma", 0.4}},
        {{"arm", 3}, {"combination", {3, 2}}, {"gamma", 0.6}}}}};
  const auto cfg = parse_simulation_config(c.dump());
  EXPECT_DOUBLE_EQ(cfg.instance.reward()(cfg.instance.means(), 1), 0.4 * 2 + 0.6 * 3);
  EXPECT_EQ(cfg.instance.effective_gamma_min(), 0.4);

  c["instance"]["filter"]["detection"]["entries"].erase(2);
  EXPECT_EQ(error_of(c).rfind("instance.filter.detection.entries:", 0), 0u);
}

TEST(Config, DigestTracksSemanticFieldsOnly) {
  const auto base = parse_simulation_config(base_config().dump());
  const auto digest = config_digest(base.canonical);
  EXPECT_EQ(digest.size(), 16u);

  // Whitespace, key order, defaults spelled out, outputs and threads.
  const auto pretty = parse_simulation_config(base_config().dump(4));
  EXPECT_EQ(config_digest(pretty.canonical), digest);
  auto same = base_config();
  same["threads"] = 3;
  same["output"] = {{"rounds", "x.csv"}, {"summary", "y.json"}};
  same["policy"]["init"] = "strict";
  same["policy"]["ties"] = "random";
  same["policy"]["estimator"]["gamma_min"] = 0.5;
  same["instance"]["arms"][0]["mu"] = 1.0;
  EXPECT_EQ(config_digest(parse_simulation_config(same.dump()).canonical), digest);

  const std::vector<std::pair<std::string, json>> changes{
      {"/instance/arms/0/mu", 1.5},
      {"/horizon", 301},
      {"/replications", 4},
      {"/seed", 10},
      {"/policy/init", "skip"},
      {"/policy/ties", "lowest_index"},
      {"/policy/estimator/mu_max", 4},
      {"/checkpoints", {100, 300}},
  };
  for (const auto& [ptr, value] : changes) {
    auto c = base_config();
    c[json::json_pointer(ptr)] = value;
    EXPECT_NE(config_digest(parse_simulation_config(c.dump()).canonical), digest) << ptr;
  }

  auto seeded = base;
  set_seed(seeded, 10);
  auto c = base_config();
  c["seed"] = 10;
  EXPECT_EQ(seeded.canonical, parse_simulation_config(c.dump()).canonical);
}

TEST(Simulate, SingleActionHasZeroRegretAndNoBound) {
  const auto cfg = load_simulation_config(kConfigDir + "/single_action.json");
  const auto res = simulate(cfg);
  std::istringstream csv(res.rounds_csv);
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "rep,t,combination,realized_reward,expected_reward,instant_regret,cum_regret");
  std::size_t rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    ASSERT_EQ(line.substr(line.rfind(',') + 1), "0") << line;
  }
  EXPECT_EQ(rows, cfg.horizon * cfg.replications);
  const auto summary = json::parse(res.summary_json);
  EXPECT_TRUE(summary["bound"].is_null());
  EXPECT_TRUE(summary["gaps"]["delta_min"].is_null());
  for (const auto& cp : summary["checkpoints"]) EXPECT_FALSE(cp.contains("bound"));
}

TEST(Simulate, OutputsAreDeterministicAndOrdered) {
  auto c = base_config();
  const auto a = simulate(parse_simulation_config(c.dump()));
  c["threads"] = 3;
  const auto b = simulate(parse_simulation_config(c.dump()));
  EXPECT_EQ(a.rounds_csv, b.rounds_csv);
  EXPECT_EQ(a.summary_json, b.summary_json);

  std::istringstream csv(a.rounds_csv);
  std::string line;
  std::getline(csv, line);
  long long prev_rep = 0, prev_t = 0;
  while (std::getline(csv, line)) {
    const long long rep = std::stoll(line.substr(0, line.find(',')));
    const long long t = std::stoll(line.substr(line.find(',') + 1));
    if (rep == prev_rep) {
      ASSERT_EQ(t, prev_t + 1);
    } else {
      ASSERT_EQ(rep, prev_rep + 1);
      ASSERT_EQ(prev_t, 300);
      ASSERT_EQ(t, 1);
    }
    prev_rep = rep;
    prev_t = t;
  }
  EXPECT_EQ(prev_rep, 2);
  EXPECT_EQ(prev_t, 300);

  c["seed"] = 10;
  EXPECT_NE(simulate(parse_simulation_config(c.dump())).rounds_csv, a.rounds_csv);
}

TEST(Simulate, SummaryCarriesBoundsAndCounters) {
  const auto cfg = parse_simulation_config(base_config().dump());
  const auto res = simulate(cfg);
  const auto s = json::parse(res.summary_json);
  EXPECT_EQ(s["bound"]["kind"], "prop4");
  EXPECT_EQ(s["config_digest"], config_digest(cfg.canonical));
  EXPECT_EQ(s["seed"], 9);
  for (const auto& cp : s["checkpoints"]) {
    const double expected =
        prop4_bound(3.0, 0.5, cfg.instance.gaps(), {3.0}, 3, cp["t"].get<double>());
    EXPECT_DOUBLE_EQ(cp["bound"].get<double>(), expected);
    EXPECT_LE(cp["mean_cum_regret"].get<double>(), expected);
  }
  for (const auto& r : s["replication_stats"]) {
    std::uint64_t total = 0;
    for (const auto& v : r["ncounters"]) total += v.get<std::uint64_t>();
    EXPECT_EQ(total - 3, r["suboptimal_loop_plays"].get<std::uint64_t>());
  }
  EXPECT_TRUE(s["warnings"].empty());
}

TEST(Simulate, WarnsWhenEstimatorHypothesesFail) {
  auto c = base_config();
  c["policy"]["estimator"]["mu_max"] = 2;
  const auto w = simulation_warnings(parse_simulation_config(c.dump()));
  ASSERT_EQ(w.size(), 1u);
  EXPECT_NE(w[0].find("mu_max"), std::string::npos);
}

TEST(Cli, BoundCommandExamples) {
  std::string out;
  EXPECT_EQ(run_cli({"bound", "--kind", "theorem1", "--epsilon", "1", "--c", "1", "--v", "1",
                     "--delta-min", "1", "--delta-max", "1", "--k", "1", "--n",
                     "2.718281828459045", "--slope", "0.5"},
                    &out),
            kExitOk);
  EXPECT_EQ(out, "7.2898681337\n");
  EXPECT_EQ(run_cli({"bound", "--kind", "prop2", "--u", "1", "--epsilon", "1", "--delta-min",
                     "1", "--delta-max", "1", "--k", "1", "--n", "2.718281828459045",
                     "--slope", "0.5"},
                    &out),
            kExitOk);
  EXPECT_EQ(out, "52.2898681337\n");
  EXPECT_EQ(run_cli({"bound", "--kind", "prop4", "--mu-max", "1", "--gamma-min", "0.5",
                     "--delta-min", "1", "--delta-max", "1", "--k", "1", "--n",
                     "2.718281828459045", "--slope", "1"},
                    &out),
            kExitOk);
  EXPECT_NEAR(std::stod(out), 24.0 * 361.0 / 9.0 + 4.289868133696453, 1e-8);
  // n = 1 leaves only the constant tail.
  EXPECT_EQ(run_cli({"bound", "--kind", "prop2", "--u", "5", "--epsilon", "0.5",
                     "--delta-min", "0.2", "--delta-max", "2", "--k", "3", "--n", "1"},
                    &out),
            kExitOk);
  EXPECT_NEAR(std::stod(out), 4.289868133696453 * 3 * 2, 1e-9);

  std::string err;
  EXPECT_EQ(run_cli({"bound", "--kind", "prop4", "--mu-max", "1", "--delta-min", "1",
                     "--delta-max", "1", "--k", "1", "--n", "3"},
                    &out, &err),
            kExitConfig);
  EXPECT_NE(err.find("--gamma-min"), std::string::npos);
  EXPECT_NE(run_cli({"bound", "--kind", "prop9", "--delta-min", "1", "--delta-max", "1",
                     "--k", "1", "--n", "3"},
                    &out, &err),
            kExitOk);
}

TEST(Cli, MissingConfigFileFails) {
  std::string err;
  EXPECT_EQ(run_cli({"simulate", "--config", "/nonexistent/run.json"}, nullptr, &err),
            kExitConfig);
  EXPECT_NE(err.find("cannot open"), std::string::npos);
  EXPECT_NE(run_cli({"concentration", "--config", "/nonexistent/c.json"}), kExitOk);
  EXPECT_NE(run_cli({}), kExitOk);
}

TEST(Cli, SimulateWritesArtifacts) {
  TempDir dir;
  const std::string out = (dir.path() / "a").string();
  ASSERT_EQ(run_cli({"simulate", "--config", kConfigDir + "/baseline_uniform.json",
                     "--out-dir", out, "--threads", "2"}),
            kExitOk);
  const auto csv1 = slurp(fs::path(out) / "uniform_rounds.csv");
  const auto json1 = slurp(fs::path(out) / "uniform_summary.json");
  ASSERT_FALSE(csv1.empty());
  const std::string out2 = (dir.path() / "b").string();
  ASSERT_EQ(run_cli({"simulate", "--config", kConfigDir + "/baseline_uniform.json",
                     "--out-dir", out2}),
            kExitOk);
  EXPECT_EQ(slurp(fs::path(out2) / "uniform_rounds.csv"), csv1);
  EXPECT_EQ(slurp(fs::path(out2) / "uniform_summary.json"), json1);

  const std::string out3 = (dir.path() / "c").string();
  ASSERT_EQ(run_cli({"simulate", "--config", kConfigDir + "/baseline_uniform.json",
                     "--out-dir", out3, "--seed", "99"}),
            kExitOk);
  const auto s3 = json::parse(slurp(fs::path(out3) / "uniform_summary.json"));
  EXPECT_EQ(s3["seed"], 99);
  EXPECT_NE(s3["config_digest"], json::parse(json1)["config_digest"]);
}

TEST(Cli, ConcentrationReferenceConfigPasses) {
  TempDir dir;
  std::string out;
  ASSERT_EQ(run_cli({"concentration", "--config", kConfigDir + "/filtered_coverage.json",
                     "--out-dir", dir.path().string()},
                    &out),
            kExitOk);
  const auto j = json::parse(slurp(dir.path() / "filtered_coverage.json"));
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_LE(j["upperFreq"].get<double>(), 0.0565);
  EXPECT_LE(j["lowerFreq"].get<double>(), 0.0565);
  EXPECT_EQ(j["reps"], 10000);
  const double g = 2.0 / 0.3;
  EXPECT_NEAR(j["radius"].get<double>(),
              (g + std::sqrt(g) + 1.0 / 3.0) * std::sqrt(2.0 * std::log(20.0) / 50.0), 1e-12);
}

TEST(Cli, ConcentrationFailureGivesNonzeroExit) {
  TempDir dir;
  const auto cfg_path = dir.path() / "tiny_u.json";
  std::ofstream(cfg_path) << R"({
    "estimator": {"kind": "truncated", "u": 0.01, "epsilon": 1},
    "arm": {"type": "pareto", "shape": 3, "scale": 1},
    "gamma": {"kind": "constant", "value": 1},
    "filter": "identity",
    "n": 50, "delta": 0.05, "reps": 2000, "seed": 1
  })";
  std::string err;
  EXPECT_EQ(run_cli({"concentration", "--config", cfg_path.string(), "--out-dir",
                     dir.path().string()},
                    nullptr, &err),
            kExitFailed);
  EXPECT_NE(err.find("warning"), std::string::npos);
  const auto j = json::parse(slurp(dir.path() / "concentration.json"));
  EXPECT_FALSE(j["pass"].get<bool>());
}
