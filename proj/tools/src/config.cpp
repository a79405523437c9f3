// Copyright (c) 2026 The adacomm Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "adacomm/tools/config.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <set>
#include <string_view>
#include <type_traits>

#include "adacomm/tools/json_path.hpp"

namespace adacomm::tools {

using nlohmann::json;

ConfigError::ConfigError(std::string field, const std::string& message)
    : std::runtime_error(field.empty() ? message : field + ": " + message),
      field_(std::move(field)) {}

namespace {

std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

template <typename T>
T convert(const json& v, const std::string& field) {
  if constexpr (std::is_same_v<T, bool>) {
    if (!v.is_boolean()) throw ConfigError(field, "expected a boolean");
    return v.get<bool>();
  } else if constexpr (std::is_same_v<T, std::string>) {
    if (!v.is_string()) throw ConfigError(field, "expected a string");
    return v.get<std::string>();
  } else if constexpr (std::is_same_v<T, double>) {
    if (!v.is_number()) throw ConfigError(field, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(field, "expected a finite number");
    return d;
  } else if constexpr (std::is_same_v<T, int> || std::is_same_v<T, long long>) {
    if (!v.is_number_integer()) throw ConfigError(field, "expected an integer");
    const auto i = v.get<std::int64_t>();
    if (i < std::numeric_limits<T>::min() || i > std::numeric_limits<T>::max()) {
      throw ConfigError(field, "integer out of range");
    }
    return static_cast<T>(i);
  } else if constexpr (std::is_same_v<T, std::size_t> ||
                       std::is_same_v<T, std::uint64_t>) {
    if (!v.is_number_integer() ||
        (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
      throw ConfigError(field, "expected a non-negative integer");
    }
    return static_cast<T>(v.get<std::uint64_t>());
  } else {
    static_assert(sizeof(T) == 0, "unsupported config type");
  }
}

// Reads one JSON object, remembering which keys were consumed so that
// anything left over can be rejected as unknown.
class Reader {
 public:
  Reader(const json& node, std::string path)
      : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(path_, "expected an object");
  }

  const std::string& path() const noexcept { return path_; }
  std::string field(std::string_view key) const { return join(path_, key); }

  const json* child(std::string_view key) {
    seen_.insert(std::string(key));
    const auto it = node_.find(std::string(key));
    if (it == node_.end() || it->is_null()) return nullptr;
    return &*it;
  }

  template <typename T>
  std::optional<T> optional(std::string_view key) {
    const json* v = child(key);
    if (v == nullptr) return std::nullopt;
    return convert<T>(*v, field(key));
  }

  template <typename T>
  T get(std::string_view key, T fallback) {
    return optional<T>(key).value_or(std::move(fallback));
  }

  template <typename T>
  T required(std::string_view key) {
    auto v = optional<T>(key);
    if (!v) throw ConfigError(field(key), "required field missing");
    return *std::move(v);
  }

  template <typename T>
  std::vector<T> list(std::string_view key) {
    const json* v = child(key);
    std::vector<T> out;
    if (v == nullptr) return out;
    if (!v->is_array()) throw ConfigError(field(key), "expected an array");
    for (std::size_t i = 0; i < v->size(); ++i) {
      out.push_back(
          convert<T>((*v)[i], field(key) + "[" + std::to_string(i) + "]"));
    }
    return out;
  }

  void finish() const {
    for (const auto& item : node_.items()) {
      if (!seen_.contains(item.key())) {
        throw ConfigError(field(item.key()), "unknown key");
      }
    }
  }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

// Core validators report "<key> must ..." messages; point them at the field.
[[noreturn]] void rethrow_in(const std::string& section,
                             const std::invalid_argument& e,
                             std::initializer_list<std::string_view> keys) {
  const std::string_view msg = e.what();
  for (std::string_view k : keys) {
    if (msg.starts_with(k) && msg.size() > k.size() && msg[k.size()] == ' ') {
      throw ConfigError(join(section, k), std::string(msg));
    }
  }
  throw ConfigError(section, std::string(msg));
}

ObjectiveSpec parse_objective(const json& node) {
  Reader r(node, "objective");
  ObjectiveSpec spec;
  const auto kind = r.required<std::string>("kind");
  const auto parsed = parse_objective_kind(kind);
  if (!parsed) {
    throw ConfigError(r.field("kind"), "unknown objective kind '" + kind + "'");
  }
  spec.kind = *parsed;
  spec.dimension = r.required<std::size_t>("dimension");
  if (spec.dimension < 1) {
    throw ConfigError(r.field("dimension"), "dimension must be >= 1");
  }
  if (const json* noise = r.child("noise")) {
    Reader n(*noise, r.field("noise"));
    spec.noise.slope = n.get<double>("M", 0.0);
    spec.noise.variance = n.get<double>("C", 0.0);
    n.finish();
    if (spec.noise.slope < 0.0) throw ConfigError(n.field("M"), "M must be >= 0");
    if (spec.noise.variance < 0.0) {
      throw ConfigError(n.field("C"), "C must be >= 0");
    }
  }
  spec.data_seed = r.get<std::uint64_t>("data_seed", 1);
  spec.n_points = r.get<std::size_t>("n_points", 0);
  spec.hidden_units = r.get<std::size_t>("hidden_units", 8);
  r.finish();

  if (spec.kind != ObjectiveKind::kNoisyQuadratic && spec.n_points < 1) {
    throw ConfigError(r.field("n_points"),
                      "n_points must be >= 1 for dataset objectives");
  }
  if (spec.hidden_units < 1 || spec.hidden_units > kMaxHiddenUnits) {
    throw ConfigError(r.field("hidden_units"),
                      "hidden_units must be in [1," +
                          std::to_string(kMaxHiddenUnits) + "]");
  }
  return spec;
}

ComputeTimeDist parse_compute(const json& node, const std::string& path) {
  Reader r(node, path);
  const auto dist = r.required<std::string>("dist");
  ComputeTimeDist out;
  if (dist == "constant") {
    out = ConstantTime{r.required<double>("value")};
  } else if (dist == "exponential") {
    out = ExponentialTime{r.required<double>("mean")};
  } else if (dist == "shifted_exponential") {
    out = ShiftedExponentialTime{r.required<double>("shift"),
                                 r.required<double>("mean")};
  } else {
    throw ConfigError(r.field("dist"), "unknown distribution '" + dist + "'");
  }
  r.finish();
  return out;
}

CommScaling parse_scaling(const json& node, const std::string& path) {
  if (node.is_string()) {
    const auto name = node.get<std::string>();
    if (name == "constant") return ConstantScaling{};
    if (name == "log2_tree") return Log2TreeScaling{};
    if (name == "linear") return LinearScaling{};
    throw ConfigError(path, "unknown scaling '" + name + "'");
  }
  Reader r(node, path);
  const json* table = r.child("table");
  if (table == nullptr || !table->is_object() || table->empty()) {
    throw ConfigError(r.field("table"), "expected a non-empty object");
  }
  TableScaling out;
  for (const auto& item : table->items()) {
    const std::string field = r.field("table") + "." + item.key();
    int m = 0;
    try {
      std::size_t used = 0;
      m = std::stoi(item.key(), &used);
      if (used != item.key().size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw ConfigError(field, "table keys must be worker counts");
    }
    out.table[m] = convert<double>(item.value(), field);
  }
  r.finish();
  return out;
}

DelayModel parse_delay(const json* node) {
  if (node == nullptr) return DelayModel(ConstantTime{1.0}, 0.0, ConstantScaling{});
  Reader r(*node, "delay");
  ComputeTimeDist compute = ConstantTime{1.0};
  if (const json* c = r.child("compute")) compute = parse_compute(*c, r.field("compute"));
  const double d0 = r.get<double>("D0", 0.0);
  CommScaling scaling = ConstantScaling{};
  if (const json* s = r.child("scaling")) scaling = parse_scaling(*s, r.field("scaling"));
  r.finish();
  try {
    return DelayModel(compute, d0, scaling);
  } catch (const std::invalid_argument& e) {
    rethrow_in("delay", e, {"D0"});
  }
}

MomentumConfig parse_momentum(const json& node, const std::string& path) {
  Reader r(node, path);
  const auto type = r.get<std::string>("type", "none");
  MomentumConfig out;
  if (type == "none") {
    out = NoMomentum{};
  } else if (type == "local") {
    out = LocalMomentum{r.get<double>("beta", 0.9)};
  } else if (type == "block") {
    out = BlockMomentum{r.get<double>("beta_global", 0.3),
                        r.get<double>("beta_local", 0.9)};
  } else {
    throw ConfigError(r.field("type"), "unknown momentum type '" + type + "'");
  }
  r.finish();
  return out;
}

void parse_train(const json& node, TrainConfig& train) {
  Reader r(node, "train");
  train.workers = r.get<int>("workers", 1);
  train.batch_size = r.get<std::size_t>("batch_size", 1);
  train.lr.base_lr = r.required<double>("lr");
  if (const json* decay = r.child("lr_decay")) {
    Reader d(*decay, r.field("lr_decay"));
    train.lr.decay_factor = d.get<double>("factor", 0.1);
    train.lr.milestones = d.list<double>("milestones");
    const auto unit = d.get<std::string>("unit", "iterations");
    if (unit == "iterations") {
      train.lr.unit = MilestoneUnit::kIterations;
    } else if (unit == "epochs") {
      train.lr.unit = MilestoneUnit::kEpochs;
    } else {
      throw ConfigError(d.field("unit"), "unit must be iterations or epochs");
    }
    d.finish();
  }
  if (const json* m = r.child("momentum")) {
    train.momentum = parse_momentum(*m, r.field("momentum"));
  }
  train.stop.max_seconds = r.optional<double>("max_seconds");
  train.stop.max_iterations = r.optional<long long>("max_iterations");
  train.seed = r.get<std::uint64_t>("seed", 1);
  train.init_value = r.optional<double>("init_value");
  train.dense_stats = r.get<bool>("dense_stats", false);
  if (const json* b = r.child("bound_tracking")) {
    Reader br(*b, r.field("bound_tracking"));
    BoundTracking bt;
    bt.smoothness = br.required<double>("smoothness");
    bt.variance_slope = br.get<double>("variance_slope", 0.0);
    br.finish();
    if (!(bt.smoothness > 0.0)) {
      throw ConfigError(br.field("smoothness"), "smoothness must be > 0");
    }
    train.bound_tracking = bt;
  }
  r.finish();

  if (train.workers < 1) throw ConfigError(r.field("workers"), "workers must be >= 1");
  if (train.batch_size < 1) {
    throw ConfigError(r.field("batch_size"), "batch_size must be >= 1");
  }
  if (!(train.lr.base_lr > 0.0)) throw ConfigError(r.field("lr"), "lr must be > 0");
  if (!train.stop.max_seconds && !train.stop.max_iterations) {
    throw ConfigError("train", "max_seconds or max_iterations is required");
  }
  if (train.stop.max_seconds && !(*train.stop.max_seconds > 0.0)) {
    throw ConfigError(r.field("max_seconds"), "max_seconds must be > 0");
  }
  if (train.stop.max_iterations && *train.stop.max_iterations < 1) {
    throw ConfigError(r.field("max_iterations"), "max_iterations must be >= 1");
  }
}

void parse_schedule(const json* node, ExperimentConfig& cfg) {
  if (node == nullptr) {
    cfg.train.schedule = FixedPeriod{1};
    return;
  }
  Reader r(*node, "schedule");
  const auto type = r.get<std::string>("type", "fixed");
  if (type == "fixed") {
    cfg.train.schedule = FixedPeriod{r.get<int>("tau", 1)};
    r.finish();
    if (std::get<FixedPeriod>(cfg.train.schedule).tau < 1) {
      throw ConfigError(r.field("tau"), "tau must be >= 1");
    }
    return;
  }
  if (type != "adacomm") {
    throw ConfigError(r.field("type"), "type must be fixed or adacomm");
  }
  AdaCommConfig a;
  a.checkpoint_interval = r.required<double>("T0");
  a.initial_period = r.get<int>("tau0", 1);
  a.gamma = r.get<double>("gamma", 0.5);
  a.slack = r.get<int>("slack", 0);
  const auto mode = r.get<std::string>("mode", "lr_coupled_approx");
  const auto parsed = parse_adacomm_mode(mode);
  if (!parsed) throw ConfigError(r.field("mode"), "unknown mode '" + mode + "'");
  a.mode = *parsed;
  a.defer_lr_decay = r.get<bool>("defer_lr_decay", true);
  a.max_period = r.get<int>("tau_max", 100);
  if (r.child("tau0_grid") != nullptr) {
    GridSearchSpec grid;
    grid.candidates = r.list<int>("tau0_grid");
    grid.budget_seconds = r.required<double>("grid_budget");
    if (grid.candidates.empty()) {
      throw ConfigError(r.field("tau0_grid"), "tau0_grid must not be empty");
    }
    for (int c : grid.candidates) {
      if (c < 1 || c > a.max_period) {
        throw ConfigError(r.field("tau0_grid"),
                          "tau0_grid entries must be in [1, tau_max]");
      }
    }
    if (!(grid.budget_seconds > 0.0)) {
      throw ConfigError(r.field("grid_budget"), "grid_budget must be > 0");
    }
    cfg.tau0_grid = grid;
  } else if (r.child("grid_budget") != nullptr) {
    throw ConfigError(r.field("grid_budget"), "grid_budget needs tau0_grid");
  }
  r.finish();
  try {
    a.validate();
  } catch (const std::invalid_argument& e) {
    rethrow_in("schedule", e, {"T0", "tau0", "gamma", "slack", "tau_max"});
  }
  cfg.train.schedule = a;
}

SweepSpec parse_sweep(const json& node) {
  Reader r(node, "sweep");
  SweepSpec s;
  s.parameter = r.required<std::string>("parameter");
  const json* values = r.child("values");
  if (values == nullptr || !values->is_array() || values->empty()) {
    throw ConfigError(r.field("values"), "expected a non-empty array");
  }
  s.values.assign(values->begin(), values->end());
  const auto policy = r.get<std::string>("seed_policy", "shared");
  if (policy == "shared") {
    s.seed_policy = SeedPolicy::kShared;
  } else if (policy == "per_run") {
    s.seed_policy = SeedPolicy::kPerRun;
  } else {
    throw ConfigError(r.field("seed_policy"), "seed_policy must be shared or per_run");
  }
  s.targets = r.list<double>("targets");
  r.finish();
  if (s.parameter.starts_with("sweep")) {
    throw ConfigError(r.field("parameter"), "cannot sweep the sweep section");
  }
  return s;
}

void cross_check(const ExperimentConfig& cfg) {
  if (cfg.objective.kind != ObjectiveKind::kNoisyQuadratic &&
      cfg.train.batch_size > cfg.objective.n_points) {
    throw ConfigError("train.batch_size", "batch_size must be <= n_points");
  }
  if (cfg.objective.kind == ObjectiveKind::kNoisyQuadratic &&
      cfg.train.lr.unit == MilestoneUnit::kEpochs &&
      !cfg.train.lr.milestones.empty()) {
    throw ConfigError("train.lr_decay.unit",
                      "epoch milestones need a dataset objective");
  }
  if (const auto* t = std::get_if<TableScaling>(&cfg.delay.scaling())) {
    if (!t->table.contains(cfg.train.workers)) {
      throw ConfigError("delay.scaling.table",
                        "table has no entry for train.workers");
    }
  }
  try {
    cfg.train.validate();
  } catch (const std::invalid_argument& e) {
    rethrow_in("train", e, {});
  }
}

json compute_json(const ComputeTimeDist& dist) {
  if (const auto* c = std::get_if<ConstantTime>(&dist)) {
    return {{"dist", "constant"}, {"value", c->value}};
  }
  if (const auto* e = std::get_if<ExponentialTime>(&dist)) {
    return {{"dist", "exponential"}, {"mean", e->mean}};
  }
  const auto& s = std::get<ShiftedExponentialTime>(dist);
  return {{"dist", "shifted_exponential"}, {"shift", s.shift}, {"mean", s.mean}};
}

json scaling_json(const CommScaling& scaling) {
  if (std::holds_alternative<ConstantScaling>(scaling)) return "constant";
  if (std::holds_alternative<Log2TreeScaling>(scaling)) return "log2_tree";
  if (std::holds_alternative<LinearScaling>(scaling)) return "linear";
  json table = json::object();
  for (const auto& [m, s] : std::get<TableScaling>(scaling).table) {
    table[std::to_string(m)] = s;
  }
  return {{"table", table}};
}

}  // namespace

ExperimentConfig parse_config_json(const json& doc) {
  Reader r(doc, "");
  ExperimentConfig cfg;
  const json* objective = r.child("objective");
  if (objective == nullptr) throw ConfigError("objective", "required field missing");
  cfg.objective = parse_objective(*objective);
  cfg.delay = parse_delay(r.child("delay"));
  const json* train = r.child("train");
  if (train == nullptr) throw ConfigError("train", "required field missing");
  parse_train(*train, cfg.train);
  parse_schedule(r.child("schedule"), cfg);
  if (const json* sweep = r.child("sweep")) cfg.sweep = parse_sweep(*sweep);
  r.finish();
  cross_check(cfg);

  if (cfg.sweep) {
    json normal = to_json(cfg);
    normal.erase("sweep");
    if (!normal.contains(dotted_to_pointer(cfg.sweep->parameter))) {
      throw ConfigError("sweep.parameter",
                        "no such field '" + cfg.sweep->parameter + "'");
    }
  }
  return cfg;
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  return parse_config_json(doc);
}

json delay_to_json(const DelayModel& delay) {
  return {
      {"compute", compute_json(delay.compute())},
      {"D0", delay.base_delay()},
      {"scaling", scaling_json(delay.scaling())},
  };
}

json to_json(const ExperimentConfig& c) {
  json doc;
  const auto& o = c.objective;
  doc["objective"] = {
      {"kind", std::string(to_string(o.kind))},
      {"dimension", o.dimension},
      {"noise", {{"M", o.noise.slope}, {"C", o.noise.variance}}},
      {"data_seed", o.data_seed},
      {"n_points", o.n_points},
      {"hidden_units", o.hidden_units},
  };
  doc["delay"] = delay_to_json(c.delay);

  const auto& t = c.train;
  json train = {
      {"workers", t.workers},
      {"batch_size", t.batch_size},
      {"lr", t.lr.base_lr},
      {"lr_decay",
       {{"factor", t.lr.decay_factor},
        {"milestones", t.lr.milestones},
        {"unit", t.lr.unit == MilestoneUnit::kEpochs ? "epochs" : "iterations"}}},
      {"seed", t.seed},
      {"dense_stats", t.dense_stats},
  };
  if (std::holds_alternative<NoMomentum>(t.momentum)) {
    train["momentum"] = {{"type", "none"}};
  } else if (const auto* m = std::get_if<LocalMomentum>(&t.momentum)) {
    train["momentum"] = {{"type", "local"}, {"beta", m->beta}};
  } else {
    const auto& b = std::get<BlockMomentum>(t.momentum);
    train["momentum"] = {{"type", "block"},
                         {"beta_global", b.global_beta},
                         {"beta_local", b.local_beta}};
  }
  if (t.stop.max_seconds) train["max_seconds"] = *t.stop.max_seconds;
  if (t.stop.max_iterations) train["max_iterations"] = *t.stop.max_iterations;
  if (t.init_value) train["init_value"] = *t.init_value;
  if (t.bound_tracking) {
    train["bound_tracking"] = {
        {"smoothness", t.bound_tracking->smoothness},
        {"variance_slope", t.bound_tracking->variance_slope}};
  }
  doc["train"] = train;

  if (const auto* f = std::get_if<FixedPeriod>(&t.schedule)) {
    doc["schedule"] = {{"type", "fixed"}, {"tau", f->tau}};
  } else {
    const auto& a = std::get<AdaCommConfig>(t.schedule);
    json s = {
        {"type", "adacomm"},
        {"T0", a.checkpoint_interval},
        {"tau0", a.initial_period},
        {"gamma", a.gamma},
        {"slack", a.slack},
        {"mode", std::string(to_string(a.mode))},
        {"defer_lr_decay", a.defer_lr_decay},
        {"tau_max", a.max_period},
    };
    if (c.tau0_grid) {
      s["tau0_grid"] = c.tau0_grid->candidates;
      s["grid_budget"] = c.tau0_grid->budget_seconds;
    }
    doc["schedule"] = s;
  }

  if (c.sweep) {
    doc["sweep"] = {
        {"parameter", c.sweep->parameter},
        {"values", c.sweep->values},
        {"seed_policy",
         c.sweep->seed_policy == SeedPolicy::kPerRun ? "per_run" : "shared"},
        {"targets", c.sweep->targets},
    };
  }
  return doc;
}

}  // namespace adacomm::tools
