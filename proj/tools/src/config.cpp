#include "fcucb_cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include "fcucb/errors.hpp"
#include "json.hpp"

namespace fcucb::cli {
namespace {

using json = nlohmann::json;

/// A JSON value together with its path in the document, so every error can
/// name the field it is about.
class Node {
 public:
  Node(const json& value, std::string path)
      : value_(&value), path_(std::move(path)) {}

  [[noreturn]] void fail(const std::string& message) const {
    throw ConfigError((path_.empty() ? std::string("config") : path_) + ": " +
                      message);
  }

  [[nodiscard]] const std::string& path() const { return path_; }
  [[nodiscard]] const json& raw() const { return *value_; }

  [[nodiscard]] std::optional<Node> find(const std::string& key) const {
    expect_object();
    auto it = value_->find(key);
    if (it == value_->end()) return std::nullopt;
    return Node(*it, child_path(key));
  }

  [[nodiscard]] Node at(const std::string& key) const {
    auto n = find(key);
    if (!n) Node(*value_, child_path(key)).fail("required field is missing");
    return *n;
  }

  /// Rejects keys outside `allowed`; catches typos that would otherwise be
  /// silently ignored.
  void allow_only(std::initializer_list<const char*> allowed) const {
    expect_object();
    for (auto it = value_->begin(); it != value_->end(); ++it) {
      const bool known =
          std::any_of(allowed.begin(), allowed.end(),
                      [&](const char* k) { return it.key() == k; });
      if (!known) Node(*it, child_path(it.key())).fail("unknown field");
    }
  }

  [[nodiscard]] double number() const {
    if (!value_->is_number()) fail("expected a number");
    const double v = value_->get<double>();
    if (!std::isfinite(v)) fail("expected a finite number");
    return v;
  }

  [[nodiscard]] std::uint64_t count() const {
    if (value_->is_number_unsigned()) return value_->get<std::uint64_t>();
    if (value_->is_number_integer()) fail("must be >= 0");
    const double v = number();
    if (v < 0 || v != std::floor(v) || v > 9.007199254740992e15) {
      fail("expected a nonnegative integer");
    }
    return static_cast<std::uint64_t>(v);
  }

  [[nodiscard]] std::string string() const {
    if (!value_->is_string()) fail("expected a string");
    return value_->get<std::string>();
  }

  [[nodiscard]] bool boolean() const {
    if (!value_->is_boolean()) fail("expected true or false");
    return value_->get<bool>();
  }

  [[nodiscard]] std::vector<Node> items() const {
    if (!value_->is_array()) fail("expected an array");
    std::vector<Node> out;
    for (std::size_t i = 0; i < value_->size(); ++i) {
      out.emplace_back((*value_)[i], path_ + "[" + std::to_string(i) + "]");
    }
    return out;
  }

 private:
  void expect_object() const {
    if (!value_->is_object()) fail("expected an object");
  }
  [[nodiscard]] std::string child_path(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  const json* value_;
  std::string path_;
};

/// Runs `body`, re-throwing library ConfigErrors with the node's path in
/// front.
template <class F>
auto at_node(const Node& node, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const ConfigError& e) {
    // Library messages may already start with the node's own name.
    std::string msg = e.what();
    const std::string prefix = node.path() + ": ";
    if (msg.rfind(prefix, 0) == 0) msg.erase(0, prefix.size());
    node.fail(msg);
  }
}

// ---- arms -----------------------------------------------------------------

UnderlyingDistribution parse_arm(const Node& n) {
  const std::string type = n.at("type").string();
  if (type == "poisson") {
    n.allow_only({"type", "mu"});
    const Node mu = n.at("mu");
    return at_node(mu, [&] { return UnderlyingDistribution::poisson(mu.number()); });
  }
  if (type == "pareto") {
    n.allow_only({"type", "shape", "scale"});
    const Node shape = n.at("shape");
    const double s = shape.number();
    if (!(s > 1.0)) shape.fail("must be > 1 so the mean exists");
    const Node scale = n.at("scale");
    return at_node(scale, [&] { return UnderlyingDistribution::pareto(s, scale.number()); });
  }
  if (type == "constant") {
    n.allow_only({"type", "value"});
    const Node v = n.at("value");
    return at_node(v, [&] { return UnderlyingDistribution::constant(v.number()); });
  }
  n.at("type").fail("unknown arm type '" + type + "' (poisson, pareto, constant)");
}

json arm_json(const UnderlyingDistribution& d) {
  return std::visit(
      [](const auto& a) -> json {
        using A = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<A, PoissonArm>) {
          return {{"type", "poisson"}, {"mu", a.mu}};
        } else if constexpr (std::is_same_v<A, ParetoArm>) {
          return {{"type", "pareto"}, {"shape", a.shape}, {"scale", a.scale}};
        } else {
          return {{"type", "constant"}, {"value", a.value}};
        }
      },
      d.kind());
}

// ---- action space ---------------------------------------------------------

Combination parse_combination(const Node& n, std::size_t k) {
  Combination c;
  for (const auto& item : n.items()) {
    const auto arm = item.count();
    if (arm < 1 || arm > k) {
      item.fail("arm " + std::to_string(arm) + " out of range 1.." + std::to_string(k));
    }
    c.push_back(static_cast<ArmId>(arm - 1));
  }
  return c;
}

json combination_json(const Combination& c) {
  json out = json::array();
  for (ArmId a : c) out.push_back(a + 1);
  return out;
}

struct ParsedSpace {
  ActionSpace space;
  json canonical;
};

ParsedSpace parse_actions(const Node& n, std::size_t k) {
  n.allow_only({"max_size", "combinations", "cap"});
  const auto max_size = n.find("max_size");
  const auto combos = n.find("combinations");
  if (max_size.has_value() == combos.has_value()) {
    n.fail("give exactly one of 'max_size' or 'combinations'");
  }
  if (max_size) {
    const auto m = max_size->count();
    if (m < 1) max_size->fail("must be >= 1");
    std::size_t cap = ActionSpace::kDefaultCap;
    if (auto c = n.find("cap")) cap = c->count();
    auto space = at_node(*max_size, [&] {
      return ActionSpace::all_subsets_up_to(k, std::min<std::size_t>(m, k), cap);
    });
    return {std::move(space), json{{"max_size", std::min<std::size_t>(m, k)}}};
  }
  std::vector<Combination> list;
  for (const auto& item : combos->items()) list.push_back(parse_combination(item, k));
  auto space = at_node(*combos, [&] { return ActionSpace::from_list(k, std::move(list)); });
  json canon = json::array();
  for (const auto& c : space.combinations()) canon.push_back(combination_json(c));
  return {std::move(space), json{{"combinations", canon}}};
}

// ---- filter ---------------------------------------------------------------

std::size_t largest_combination(const ActionSpace& space) {
  std::size_t m = 0;
  for (const auto& c : space.combinations()) m = std::max(m, c.size());
  return m;
}

struct ParsedFilter {
  FilterModel filter;
  json canonical;
};

ParsedFilter parse_filter(const Node& n, const ActionSpace& space) {
  const std::string type = n.at("type").string();
  if (type == "identity") {
    n.allow_only({"type"});
    return {FilterModel::identity(), json{{"type", "identity"}}};
  }
  if (type != "binomial") n.at("type").fail("unknown filter '" + type + "' (identity, binomial)");
  n.allow_only({"type", "detection"});

  const Node d = n.at("detection");
  d.allow_only({"rule", "gamma", "entries", "gamma_min"});
  std::optional<double> gmin;
  if (auto g = d.find("gamma_min")) gmin = g->number();
  const std::string rule = d.at("rule").string();

  json canon{{"rule", rule}};
  DetectionModel model = DetectionModel::certain();
  if (rule == "inverse_size") {
    const std::size_t m = largest_combination(space);
    if (gmin) {
      model = at_node(d, [&] {
        std::vector<double> g(m);
        for (std::size_t s = 1; s <= m; ++s) g[s - 1] = 1.0 / static_cast<double>(s);
        return DetectionModel::size_rule(g, gmin);
      });
    } else {
      model = DetectionModel::inverse_size(m);
    }
  } else if (rule == "by_size") {
    const Node gn = d.at("gamma");
    std::vector<double> g;
    for (const auto& item : gn.items()) g.push_back(item.number());
    if (g.size() < largest_combination(space)) {
      gn.fail("needs a value for every combination size up to " +
              std::to_string(largest_combination(space)));
    }
    model = at_node(gn, [&] { return DetectionModel::size_rule(g, gmin); });
    canon["gamma"] = g;
  } else if (rule == "table") {
    const Node en = d.at("entries");
    std::map<DetectionModel::TableKey, double> table;
    json canon_entries = json::array();
    for (const auto& e : en.items()) {
      e.allow_only({"arm", "combination", "gamma"});
      const Node arm_node = e.at("arm");
      const auto arm = arm_node.count();
      if (arm < 1 || arm > space.arm_count()) arm_node.fail("arm out of range");
      const Node cn = e.at("combination");
      const auto combo = parse_combination(cn, space.arm_count());
      const auto id = space.find(combo);
      if (!id) cn.fail("not in the action space");
      if (!space.contains(*id, static_cast<ArmId>(arm - 1))) {
        e.fail("arm " + std::to_string(arm) + " is not part of the combination");
      }
      if (!table.emplace(DetectionModel::TableKey{static_cast<ArmId>(arm - 1), *id},
                         e.at("gamma").number())
               .second) {
        e.fail("duplicate entry");
      }
    }
    // Every (arm, combination) pair that can be played must be tabulated.
    for (CombinationId id = 0; id < space.size(); ++id) {
      for (ArmId a : space[id]) {
        if (!table.count({a, id})) {
          en.fail("no entry for arm " + std::to_string(a + 1) + " in combination " +
                  combination_json(space[id]).dump());
        }
      }
    }
    for (const auto& [key, g] : table) {
      canon_entries.push_back({{"arm", key.first + 1},
                               {"combination", combination_json(space[key.second])},
                               {"gamma", g}});
    }
    model = at_node(en, [&] { return DetectionModel::table(table, gmin); });
    canon["entries"] = canon_entries;
  } else if (rule == "certain") {
    model = DetectionModel::certain();
  } else {
    d.at("rule").fail("unknown rule '" + rule + "' (inverse_size, by_size, table, certain)");
  }
  canon["gamma_min"] = model.gamma_min();
  return {FilterModel::binomial(model), json{{"type", "binomial"}, {"detection", canon}}};
}

// ---- estimator ------------------------------------------------------------

/// `default_gamma_min` fills a missing gamma_min for the filtered truncated
/// mean.
EstimatorSpec parse_estimator(const Node& n, double default_gamma_min) {
  const std::string kind = n.at("kind").string();
  if (kind == "filtered_truncated") {
    n.allow_only({"kind", "mu_max", "gamma_min"});
    const Node mm = n.at("mu_max");
    double g = default_gamma_min;
    if (auto gn = n.find("gamma_min")) g = gn->number();
    return at_node(n, [&] { return EstimatorSpec::filtered_truncated(mm.number(), g); });
  }
  if (kind == "truncated") {
    n.allow_only({"kind", "u", "epsilon", "threshold_log"});
    auto log_form = TruncationLog::InverseDelta;
    if (auto l = n.find("threshold_log")) {
      const auto s = l->string();
      if (s == "sample_index") {
        log_form = TruncationLog::SampleIndex;
      } else if (s != "inverse_delta") {
        l->fail("expected 'inverse_delta' or 'sample_index'");
      }
    }
    const Node u = n.at("u");
    const Node eps = n.at("epsilon");
    return at_node(n, [&] { return EstimatorSpec::truncated(u.number(), eps.number(), log_form); });
  }
  if (kind == "empirical") {
    n.allow_only({"kind"});
    return EstimatorSpec::empirical();
  }
  n.at("kind").fail("unknown estimator '" + kind +
                    "' (filtered_truncated, truncated, empirical)");
}

json estimator_json(const EstimatorSpec& spec) {
  return std::visit(
      [](const auto& s) -> json {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, FilteredTruncatedSpec>) {
          return {{"kind", "filtered_truncated"}, {"mu_max", s.mu_max}, {"gamma_min", s.gamma_min}};
        } else if constexpr (std::is_same_v<S, TruncatedSpec>) {
          return {{"kind", "truncated"},
                  {"u", s.u},
                  {"epsilon", s.epsilon},
                  {"threshold_log", s.log_form == TruncationLog::SampleIndex
                                        ? "sample_index"
                                        : "inverse_delta"}};
        } else {
          return {{"kind", "empirical"}};
        }
      },
      spec.kind());
}

RadiusParams parse_radius(const Node& n) {
  n.allow_only({"epsilon", "c", "v"});
  RadiusParams p{n.at("epsilon").number(), n.at("c").number(), n.at("v").number()};
  if (!(p.epsilon > 0 && p.epsilon <= 1)) n.at("epsilon").fail("must be in (0, 1]");
  if (!(p.c > 0)) n.at("c").fail("must be > 0");
  if (!(p.v > 0)) n.at("v").fail("must be > 0");
  return p;
}

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: not valid JSON: ") + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PolicyKind parse_policy_kind(const Node& n) {
  const auto s = n.string();
  if (s == "robust_fcucb") return PolicyKind::RobustFcucb;
  if (s == "empirical_cucb") return PolicyKind::EmpiricalCucb;
  if (s == "optimal_oracle") return PolicyKind::OptimalOracle;
  if (s == "uniform_random") return PolicyKind::UniformRandom;
  n.fail("unknown policy '" + s +
         "' (robust_fcucb, empirical_cucb, optimal_oracle, uniform_random)");
}

}  // namespace

std::string to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::RobustFcucb:
      return "robust_fcucb";
    case PolicyKind::EmpiricalCucb:
      return "empirical_cucb";
    case PolicyKind::OptimalOracle:
      return "optimal_oracle";
    case PolicyKind::UniformRandom:
      return "uniform_random";
  }
  return "unknown";
}

std::vector<Round> default_checkpoints(Round horizon) {
  std::set<Round> s;
  for (Round p = 10; p < horizon; p *= 10) s.insert(p);
  for (Round i = 1; i <= 10; ++i) {
    const Round t = horizon * i / 10;
    if (t >= 1) s.insert(t);
  }
  s.insert(horizon);
  return {s.begin(), s.end()};
}

SimulationConfig parse_simulation_config(const std::string& text) {
  const json doc = parse_document(text);
  const Node root(doc, "");
  root.allow_only({"instance", "policy", "horizon", "replications", "seed", "threads",
                   "checkpoints", "output"});

  // Instance.
  const Node inst = root.at("instance");
  inst.allow_only({"arms", "actions", "filter"});
  const Node arms_node = inst.at("arms");
  std::vector<UnderlyingDistribution> arms;
  json canon_arms = json::array();
  for (const auto& a : arms_node.items()) {
    arms.push_back(parse_arm(a));
    canon_arms.push_back(arm_json(arms.back()));
  }
  if (arms.empty()) arms_node.fail("needs at least one arm");
  auto [space, canon_space] = parse_actions(inst.at("actions"), arms.size());
  ParsedFilter filter{FilterModel::identity(), json{{"type", "identity"}}};
  if (auto f = inst.find("filter")) filter = parse_filter(*f, space);

  std::optional<ProblemInstance> instance;
  at_node(inst, [&] {
    instance.emplace(std::move(arms), std::move(space), filter.filter);
    return 0;
  });

  // Policy.
  const Node pol = root.at("policy");
  pol.allow_only({"kind", "estimator", "radius", "init", "ties"});
  const PolicyKind kind = parse_policy_kind(pol.at("kind"));
  std::optional<IndexPolicyConfig> index;
  json canon_policy{{"kind", to_string(kind)}};

  InitMode init = InitMode::Strict;
  if (auto i = pol.find("init")) {
    const auto s = i->string();
    if (s == "skip") {
      init = InitMode::Skip;
    } else if (s != "strict") {
      i->fail("expected 'strict' or 'skip'");
    }
  }
  TieBreak ties = TieBreak::Random;
  if (auto t = pol.find("ties")) {
    const auto s = t->string();
    if (s == "lowest_index") {
      ties = TieBreak::LowestIndex;
    } else if (s != "random") {
      t->fail("expected 'random' or 'lowest_index'");
    }
  }
  canon_policy["ties"] = ties == TieBreak::Random ? "random" : "lowest_index";

  if (kind == PolicyKind::RobustFcucb || kind == PolicyKind::EmpiricalCucb) {
    IndexPolicyConfig cfg;
    cfg.init = init;
    if (auto r = pol.find("radius")) cfg.radius = parse_radius(*r);
    if (kind == PolicyKind::RobustFcucb) {
      cfg.estimator = parse_estimator(pol.at("estimator"), instance->effective_gamma_min());
      if (std::holds_alternative<EmpiricalSpec>(cfg.estimator.kind())) {
        pol.at("estimator").at("kind").fail(
            "robust_fcucb needs a robust estimator; use empirical_cucb for the "
            "plain empirical mean");
      }
    } else {
      if (auto e = pol.find("estimator")) {
        if (!std::holds_alternative<EmpiricalSpec>(parse_estimator(*e, 1.0).kind())) {
          e->at("kind").fail("empirical_cucb always uses the empirical mean");
        }
      }
      if (!cfg.radius) {
        pol.at("radius").fail("empirical_cucb needs explicit index constants");
      }
    }
    at_node(pol, [&] {
      IndexPolicy probe(*instance, cfg);
      return 0;
    });
    canon_policy["estimator"] = estimator_json(cfg.estimator);
    canon_policy["init"] = init == InitMode::Strict ? "strict" : "skip";
    if (cfg.radius) {
      canon_policy["radius"] = {{"epsilon", cfg.radius->epsilon},
                                {"c", cfg.radius->c},
                                {"v", cfg.radius->v}};
    }
    index = cfg;
  } else {
    for (const char* unused : {"estimator", "radius", "init"}) {
      if (auto u = pol.find(unused)) u->fail("not used by policy " + to_string(kind));
    }
  }

  // Run parameters.
  const Node hn = root.at("horizon");
  const Round horizon = hn.count();
  const std::size_t init_len =
      index ? initialisation_schedule(instance->space(), index->init).size() : 0;
  if (horizon <= init_len || horizon < 1) {
    hn.fail("must exceed the initialisation length (" + std::to_string(init_len) + ")");
  }
  std::size_t reps = 1;
  if (auto r = root.find("replications")) {
    reps = r->count();
    if (reps < 1) r->fail("must be >= 1");
  }
  std::uint64_t seed = 1;
  if (auto s = root.find("seed")) seed = s->count();
  unsigned threads = 1;
  if (auto t = root.find("threads")) {
    const auto v = t->count();
    if (v < 1 || v > 1024) t->fail("must be in 1..1024");
    threads = static_cast<unsigned>(v);
  }
  std::vector<Round> checkpoints;
  if (auto c = root.find("checkpoints")) {
    std::set<Round> s;
    for (const auto& item : c->items()) {
      const auto t = item.count();
      if (t < 1 || t > horizon) item.fail("must be within 1..horizon");
      s.insert(t);
    }
    if (s.empty()) c->fail("needs at least one round");
    checkpoints.assign(s.begin(), s.end());
  } else {
    checkpoints = default_checkpoints(horizon);
  }

  SimulationConfig cfg(std::move(*instance));
  cfg.policy = kind;
  cfg.index = index;
  cfg.ties = ties;
  cfg.horizon = horizon;
  cfg.replications = reps;
  cfg.seed = seed;
  cfg.threads = threads;
  cfg.checkpoints = checkpoints;

  if (auto o = root.find("output")) {
    o->allow_only({"rounds", "summary", "write_rounds"});
    if (auto r = o->find("rounds")) cfg.rounds_file = r->string();
    if (auto s = o->find("summary")) cfg.summary_file = s->string();
    if (auto w = o->find("write_rounds")) cfg.write_rounds = w->boolean();
  }

  const json canon{
      {"instance",
       {{"arms", canon_arms}, {"actions", canon_space}, {"filter", filter.canonical}}},
      {"policy", canon_policy},
      {"horizon", horizon},
      {"replications", reps},
      {"seed", seed},
      {"checkpoints", checkpoints},
  };
  cfg.canonical = canon.dump();
  return cfg;
}

ConcentrationConfig parse_concentration_config(const std::string& text) {
  const json doc = parse_document(text);
  const Node root(doc, "");
  root.allow_only({"estimator", "arm", "gamma", "filter", "n", "delta", "reps", "seed",
                   "output"});
  ConcentrationConfig cfg;
  auto& exp = cfg.experiment;

  exp.arm = parse_arm(root.at("arm"));

  const Node gn = root.at("gamma");
  const std::string gkind = gn.at("kind").string();
  json canon_gamma{{"kind", gkind}};
  if (gkind == "constant") {
    gn.allow_only({"kind", "value"});
    const Node v = gn.at("value");
    exp.gammas = at_node(v, [&] { return GammaSequence::constant(v.number()); });
    canon_gamma["value"] = v.number();
  } else if (gkind == "uniform") {
    gn.allow_only({"kind", "min"});
    const Node m = gn.at("min");
    exp.gammas = at_node(m, [&] { return GammaSequence::uniform(m.number()); });
    canon_gamma["min"] = m.number();
  } else if (gkind == "fixed") {
    gn.allow_only({"kind", "values"});
    const Node vn = gn.at("values");
    std::vector<double> vals;
    for (const auto& item : vn.items()) vals.push_back(item.number());
    exp.gammas = at_node(vn, [&] { return GammaSequence::fixed(vals); });
    canon_gamma["values"] = vals;
  } else {
    gn.at("kind").fail("unknown gamma sequence '" + gkind + "' (constant, uniform, fixed)");
  }

  const Node fn = root.at("filter");
  const auto f = fn.string();
  if (f == "binomial") {
    exp.binomial_filter = true;
  } else if (f == "identity") {
    exp.binomial_filter = false;
  } else {
    fn.fail("expected 'binomial' or 'identity'");
  }

  exp.estimator = parse_estimator(root.at("estimator"), exp.gammas.lower_bound());
  if (std::holds_alternative<EmpiricalSpec>(exp.estimator.kind())) {
    root.at("estimator").at("kind").fail("the empirical mean has no certified radius");
  }

  const Node nn = root.at("n");
  exp.n = nn.count();
  if (exp.n < 1) nn.fail("must be >= 1");
  const Node dn = root.at("delta");
  exp.delta = dn.number();
  if (!(exp.delta > 0 && exp.delta < 1)) dn.fail("must be in (0, 1)");
  if (auto r = root.find("reps")) {
    exp.reps = r->count();
    if (exp.reps < 1) r->fail("must be >= 1");
  }
  exp.seed = 1;
  if (auto s = root.find("seed")) exp.seed = s->count();
  if (auto o = root.find("output")) cfg.output_file = o->string();

  // Surface the remaining cross-field errors with a path.
  if (!exp.binomial_filter && !exp.gammas.is_unit()) {
    gn.fail("identity filtering needs gamma = 1 throughout");
  }
  if (exp.binomial_filter && !exp.arm.integer_valued()) {
    root.at("arm").fail("binomial filtering needs an integer-valued arm");
  }
  if (const auto* fx = std::get_if<GammaSequence::Fixed>(&exp.gammas.kind());
      fx && fx->values.size() < exp.n) {
    gn.at("values").fail("needs at least n values");
  }

  const json canon{{"estimator", estimator_json(exp.estimator)},
                   {"arm", arm_json(exp.arm)},
                   {"gamma", canon_gamma},
                   {"filter", f},
                   {"n", exp.n},
                   {"delta", exp.delta},
                   {"reps", exp.reps},
                   {"seed", exp.seed}};
  cfg.canonical = canon.dump();
  return cfg;
}

SimulationConfig load_simulation_config(const std::filesystem::path& path) {
  return parse_simulation_config(read_file(path));
}

ConcentrationConfig load_concentration_config(const std::filesystem::path& path) {
  return parse_concentration_config(read_file(path));
}

void set_seed(SimulationConfig& config, std::uint64_t seed) {
  config.seed = seed;
  json c = json::parse(config.canonical);
  c["seed"] = seed;
  config.canonical = c.dump();
}

void set_seed(ConcentrationConfig& config, std::uint64_t seed) {
  config.experiment.seed = seed;
  json c = json::parse(config.canonical);
  c["seed"] = seed;
  config.canonical = c.dump();
}

std::string config_digest(const std::string& canonical) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace fcucb::cli
