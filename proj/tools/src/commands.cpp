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

#include "adacomm/tools/commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "adacomm/controller.hpp"
#include "adacomm/delay.hpp"
#include "adacomm/tau_search.hpp"
#include "adacomm/tools/csv.hpp"
#include "adacomm/tools/experiment.hpp"
#include "adacomm/tools/manifest.hpp"
#include "adacomm/tools/sweep.hpp"

namespace adacomm::tools {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

class Stopwatch {
 public:
  Stopwatch()
      : wall_(std::chrono::system_clock::now()), start_(Clock::now()) {}
  std::chrono::system_clock::time_point started_at() const { return wall_; }
  double elapsed() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

 private:
  std::chrono::system_clock::time_point wall_;
  Clock::time_point start_;
};

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

fs::path sibling(const fs::path& out, const std::string& suffix) {
  return out.parent_path() / (out.stem().string() + suffix);
}

void finish_manifest(RunManifest& m, const Stopwatch& clock) {
  m.started_at = clock.started_at();
  m.elapsed_seconds = clock.elapsed();
}

DelayModel delay_from_flags(const DelayOptions& o) {
  ComputeTimeDist compute;
  if (o.dist == "constant") {
    compute = ConstantTime{o.compute_mean};
  } else if (o.dist == "exponential") {
    compute = ExponentialTime{o.compute_mean};
  } else if (o.dist == "shifted_exponential") {
    compute = ShiftedExponentialTime{o.shift, o.compute_mean};
  } else {
    throw ConfigError("--dist", "unknown distribution '" + o.dist + "'");
  }
  CommScaling scaling;
  if (o.scaling == "constant") {
    scaling = ConstantScaling{};
  } else if (o.scaling == "log2_tree") {
    scaling = Log2TreeScaling{};
  } else if (o.scaling == "linear") {
    scaling = LinearScaling{};
  } else {
    throw ConfigError("--scaling", "unknown scaling '" + o.scaling + "'");
  }
  try {
    return DelayModel(compute, o.base_delay, scaling);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("", e.what());
  }
}

ModelVector start_point(const ExperimentConfig& cfg, const Objective& obj) {
  if (cfg.train.init_value) {
    return ModelVector(obj.dimension(), *cfg.train.init_value);
  }
  return obj.initial_point();
}

}  // namespace

int run_simulate(const SimulateOptions& opts, std::ostream& log) {
  const Stopwatch clock;
  ExperimentConfig cfg = parse_config(opts.config);
  if (opts.seed) cfg.train.seed = *opts.seed;
  if (cfg.sweep) {
    log << "note: ignoring the sweep section; use the sweep subcommand\n";
    cfg.sweep.reset();
  }
  const ExperimentResult result = run_experiment(cfg);
  const RunTrace& trace = result.trace;

  RunManifest manifest;
  manifest.command = "simulate";
  manifest.config = to_json(cfg);
  manifest.seed = cfg.train.seed;
  manifest.outputs.push_back(opts.out.string());
  {
    auto out = open_output(opts.out);
    write_trace_csv(out, trace);
  }
  const bool adaptive =
      std::holds_alternative<AdaCommConfig>(result.resolved.schedule);
  fs::path events;
  if (adaptive) {
    events = sibling(opts.out, ".events.csv");
    auto out = open_output(events);
    write_events_csv(out, trace);
    manifest.outputs.push_back(events.string());
  }
  if (result.grid) {
    json entries = json::array();
    for (const auto& e : result.grid->entries) {
      entries.push_back(
          {{"tau", e.tau}, {"final_loss", e.final_loss}, {"diverged", e.diverged}});
    }
    manifest.notes["tau0_grid"] = {{"best_tau", result.grid->best_tau},
                                   {"entries", entries}};
  }
  manifest.notes["warnings"] = trace.warnings;
  manifest.notes["diverged"] = trace.diverged;
  if (trace.diverged) manifest.notes["diagnostic"] = trace.diagnostic;
  finish_manifest(manifest, clock);
  write_manifest(opts.out, manifest);
  if (adaptive) write_manifest(events, manifest);

  for (const auto& w : trace.warnings) log << "warning: " << w << '\n';
  if (result.grid) log << "tau0 from grid search: " << result.grid->best_tau << '\n';
  const double final_loss =
      trace.records.empty() ? trace.initial_loss : trace.records.back().train_loss;
  log << fmt::format("rounds: {}  final loss: {}\n", trace.records.size(),
                     format_double(final_loss));
  if (trace.diverged) {
    log << "diverged: " << trace.diagnostic << '\n';
    return kExitDiverged;
  }
  return kExitOk;
}

int run_sweep_command(const SweepOptions& opts, std::ostream& log) {
  const Stopwatch clock;
  ExperimentConfig cfg = parse_config(opts.config);
  if (!cfg.sweep) {
    throw ConfigError("sweep", "the sweep subcommand needs a sweep section");
  }
  if (opts.seed) cfg.train.seed = *opts.seed;
  const SweepResult result = run_sweep(cfg, *cfg.sweep, opts.jobs);

  RunManifest summary;
  summary.command = "sweep";
  summary.config = to_json(cfg);
  summary.seed = cfg.train.seed;
  summary.outputs.push_back(opts.out.string());
  {
    auto out = open_output(opts.out);
    write_sweep_summary(out, result);
  }
  std::size_t failed = 0;
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const SweepRow& row = result.rows[i];
    if (!row.error.empty()) ++failed;
    if (!row.config) continue;
    const fs::path child = sibling(opts.out, ".run" + std::to_string(i) + ".csv");
    {
      auto out = open_output(child);
      write_trace_csv(out, row.trace);
    }
    RunManifest m;
    m.command = "simulate";
    m.config = to_json(*row.config);
    m.seed = row.config->train.seed;
    m.outputs.push_back(child.string());
    m.notes["sweep_index"] = i;
    m.notes["sweep_value"] = row.value;
    finish_manifest(m, clock);
    write_manifest(child, m);
    summary.outputs.push_back(child.string());
  }
  finish_manifest(summary, clock);
  write_manifest(opts.out, summary);
  log << fmt::format("sweep over {}: {} runs, {} failed\n", result.parameter,
                     result.rows.size(), failed);
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    if (!result.rows[i].error.empty()) {
      log << fmt::format("  run {}: {}\n", i, result.rows[i].error);
    }
  }
  return kExitOk;
}

int run_runtime(const RuntimeOptions& opts, std::ostream& log) {
  const Stopwatch clock;
  std::optional<DelayModel> delay;
  std::vector<int> workers = opts.delay.workers;
  if (opts.delay.config) {
    const ExperimentConfig cfg = parse_config(*opts.delay.config);
    delay = cfg.delay;
    if (workers.empty()) workers.push_back(cfg.train.workers);
  } else {
    delay = delay_from_flags(opts.delay);
    if (workers.empty()) workers.push_back(1);
  }
  if (opts.taus.empty()) throw ConfigError("--taus", "need at least one tau");
  for (int m : workers) {
    if (m < 1) throw ConfigError("--workers", "worker counts must be >= 1");
  }
  for (int t : opts.taus) {
    if (t < 1) throw ConfigError("--taus", "tau values must be >= 1");
  }
  if (!delay->deterministic() && opts.samples < 1000) {
    throw ConfigError("--samples", "need at least 1000 samples");
  }

  auto row_for = [&](int m, int tau) {
    RuntimeRow row;
    row.workers = m;
    row.tau = tau;
    row.alpha = comm_delay(*delay, m) / delay->mean_compute_time();
    if (delay->deterministic()) {
      const auto stats = expected_iteration_time(*delay, m, tau, 0, opts.seed);
      row.mean_time = row.p50 = row.p99 = stats.mean_iteration_time;
    } else {
      const EmpiricalCdf cdf = runtime_tail(*delay, m, tau, opts.samples, opts.seed);
      row.mean_time = cdf.mean();
      row.stderr_time = cdf.stderr_of_mean();
      row.p50 = cdf.quantile(0.5);
      row.p99 = cdf.quantile(0.99);
    }
    return row;
  };

  std::vector<RuntimeRow> rows;
  for (int m : workers) {
    std::optional<double> sync_mean;
    if (opts.speedup) sync_mean = row_for(m, 1).mean_time;
    for (int tau : opts.taus) {
      RuntimeRow row = row_for(m, tau);
      if (opts.speedup) {
        row.speedup = *sync_mean / row.mean_time;
        row.speedup_formula = speedup_ratio(row.alpha, tau);
      }
      rows.push_back(row);
    }
  }
  {
    auto out = open_output(opts.out);
    write_runtime_csv(out, rows, opts.speedup);
  }
  RunManifest manifest;
  manifest.command = opts.speedup ? "speedup" : "runtime";
  manifest.config = {{"delay", delay_to_json(*delay)},
                     {"workers", workers},
                     {"taus", opts.taus},
                     {"samples", opts.samples}};
  manifest.seed = opts.seed;
  manifest.outputs.push_back(opts.out.string());
  finish_manifest(manifest, clock);
  write_manifest(opts.out, manifest);
  log << fmt::format("{} rows written to {}\n", rows.size(), opts.out.string());
  return kExitOk;
}

ResolvedBound resolve_bound_params(const BoundOptions& opts) {
  ResolvedBound rb;
  BoundParams& p = rb.params;
  std::optional<double> f1, finf, l, c, y, d, lr;
  std::optional<int> m;
  if (opts.config) {
    const ExperimentConfig cfg = parse_config(*opts.config);
    const auto obj = make_objective(cfg.objective);
    f1 = obj->evaluate_loss(start_point(cfg, *obj));
    finf = obj->loss_lower_bound();
    if (cfg.train.bound_tracking) {
      l = cfg.train.bound_tracking->smoothness;
    } else {
      l = obj->smoothness_bound();
    }
    if (cfg.objective.kind == ObjectiveKind::kNoisyQuadratic) {
      c = cfg.objective.noise.variance;
    }
    p.variance_slope = cfg.objective.noise.slope;
    m = cfg.train.workers;
    y = cfg.delay.mean_compute_time();
    d = comm_delay(cfg.delay, cfg.train.workers);
    lr = cfg.train.lr.base_lr;
    rb.approximate = !cfg.delay.deterministic();
  } else {
    finf = 0.0;
  }
  auto pick = [](const auto& flag, const auto& fallback, const char* name) {
    if (flag) return *flag;
    if (fallback) return *fallback;
    throw ConfigError(name, "required (no config value available)");
  };
  p.initial_loss = pick(opts.initial_loss, f1, "--F1");
  p.loss_floor = pick(opts.loss_floor, finf, "--Finf");
  p.smoothness = pick(opts.smoothness, l, "--L");
  p.variance = pick(opts.variance, c, "--C");
  p.workers = pick(opts.workers, m, "--m");
  p.compute_time = pick(opts.compute_time, y, "--Y");
  p.comm_delay = pick(opts.comm_delay, d, "--D");
  rb.lr = pick(opts.lr, lr, "--lr");
  // Explicit Y and D are constants by definition.
  if (opts.compute_time && opts.comm_delay) rb.approximate = false;
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("", e.what());
  }
  if (!(rb.lr > 0.0)) throw ConfigError("--lr", "lr must be > 0");
  return rb;
}

int run_bound(const BoundCurveOptions& opts, std::ostream& log) {
  const Stopwatch clock;
  const ResolvedBound rb = resolve_bound_params(opts.bound);
  if (opts.taus.empty()) throw ConfigError("--taus", "need at least one tau");
  if (!(opts.t_min > 0.0) || !(opts.t_max > opts.t_min)) {
    throw ConfigError("--t-min", "need 0 < t-min < t-max");
  }
  if (opts.points < 2) throw ConfigError("--points", "need at least 2 points");

  {
    auto out = open_output(opts.out);
    out << "T,tau,bound,floor\n";
    const double ratio = opts.t_max / opts.t_min;
    for (int i = 0; i < opts.points; ++i) {
      const double t = i + 1 == opts.points
                           ? opts.t_max
                           : opts.t_min * std::pow(ratio, static_cast<double>(i) /
                                                              (opts.points - 1));
      for (int tau : opts.taus) {
        out << fmt::format(
            "{},{},{},{}\n", t, tau,
            error_runtime_bound(rb.params, rb.lr, tau, t),
            error_floor(rb.params, rb.lr, tau));
      }
    }
  }
  if (rb.approximate) {
    log << "approximate: stochastic compute/communication times replaced by "
           "their means\n";
  }
  for (std::size_t i = 0; i + 1 < opts.taus.size(); ++i) {
    const auto cross = bound_crossover(rb.params, rb.lr, opts.taus[i],
                                       opts.taus[i + 1], opts.t_min, opts.t_max);
    if (cross) {
      log << fmt::format("crossover tau={} vs tau={}: T = {}\n", opts.taus[i],
                         opts.taus[i + 1], format_double(*cross));
    }
  }
  RunManifest manifest;
  manifest.command = "bound";
  manifest.config = {{"F1", rb.params.initial_loss}, {"Finf", rb.params.loss_floor},
                     {"L", rb.params.smoothness},    {"C", rb.params.variance},
                     {"m", rb.params.workers},       {"Y", rb.params.compute_time},
                     {"D", rb.params.comm_delay},    {"lr", rb.lr},
                     {"taus", opts.taus},            {"t_min", opts.t_min},
                     {"t_max", opts.t_max},          {"points", opts.points}};
  manifest.notes["approximate"] = rb.approximate;
  manifest.outputs.push_back(opts.out.string());
  finish_manifest(manifest, clock);
  write_manifest(opts.out, manifest);
  return kExitOk;
}

int run_opt_tau(const OptTauOptions& opts, std::ostream& log) {
  const Stopwatch clock;
  const ResolvedBound rb = resolve_bound_params(opts.bound);
  if (!(opts.horizon > 0.0)) throw ConfigError("--T", "horizon must be > 0");
  const BoundParams& p = rb.params;
  const double star = optimal_tau(p.initial_loss, p.loss_floor, p.comm_delay, rb.lr,
                                  p.smoothness, p.variance, opts.horizon);
  struct Row {
    std::string label;
    double tau;
  };
  std::vector<Row> rows{{"tau_star", std::max(1.0, star)}};
  const int lo = std::max(1, static_cast<int>(std::floor(star)));
  const int hi = std::max(1, static_cast<int>(std::ceil(star)));
  rows.push_back({"floor", static_cast<double>(lo)});
  if (hi != lo) rows.push_back({"ceil", static_cast<double>(hi)});

  if (rb.approximate) log << "approximate: means substituted for Y and D\n";
  log << fmt::format("tau* = {}\n", format_double(star));
  for (const auto& r : rows) {
    log << fmt::format("{:>8}  tau={:<10} bound={}\n", r.label, format_double(r.tau),
                       format_double(error_runtime_bound(p, rb.lr, r.tau,
                                                         opts.horizon)));
  }
  if (opts.out) {
    {
      auto out = open_output(*opts.out);
      out << "label,tau,bound\n";
      for (const auto& r : rows) {
        out << fmt::format("{},{},{}\n", r.label, r.tau,
                           error_runtime_bound(p, rb.lr, r.tau, opts.horizon));
      }
    }
    RunManifest manifest;
    manifest.command = "opt-tau";
    manifest.config = {{"F1", p.initial_loss}, {"Finf", p.loss_floor},
                       {"L", p.smoothness},    {"C", p.variance},
                       {"m", p.workers},       {"Y", p.compute_time},
                       {"D", p.comm_delay},    {"lr", rb.lr},
                       {"T", opts.horizon}};
    manifest.notes["approximate"] = rb.approximate;
    manifest.outputs.push_back(opts.out->string());
    finish_manifest(manifest, clock);
    write_manifest(*opts.out, manifest);
  }
  return kExitOk;
}

int run_check_conditions(const ConditionsOptions& opts, std::ostream& log) {
  RateDescriptor lr;
  RateDescriptor tau;
  try {
    lr = parse_rate(opts.lr);
    tau = parse_rate(opts.tau);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("", e.what());
  }
  ConditionsReport report;
  try {
    report = check_adaptive_conditions(lr, tau);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("", e.what());
  }
  auto print = [&](const SeriesCondition& c) {
    log << fmt::format("{:<24}{:>10}  {:<10}{:<10}{}\n", c.name,
                       format_double(c.exponent),
                       c.series_diverges ? "diverges" : "converges",
                       c.required_divergent ? "diverges" : "converges",
                       c.holds ? "PASS" : "FAIL");
  };
  log << "lr  = " << describe(lr) << '\n' << "tau = " << describe(tau) << "\n\n";
  log << fmt::format("{:<24}{:>10}  {:<10}{:<10}{}\n", "condition", "exponent",
                     "series", "required", "verdict");
  for (const auto& c : report.adaptive) print(c);
  if (report.constant_tau_reduction) {
    log << "\nconstant-tau reduction:\n";
    for (const auto& c : *report.constant_tau_reduction) print(c);
  }
  log << "\noverall: " << (report.pass() ? "PASS" : "FAIL") << '\n';
  return kExitOk;
}

int run_grid_tau0(const GridOptions& opts, std::ostream& log) {
  const Stopwatch clock;
  ExperimentConfig cfg = parse_config(opts.config);
  if (opts.seed) cfg.train.seed = *opts.seed;
  std::vector<int> candidates = opts.candidates;
  std::optional<double> budget = opts.budget;
  if (cfg.tau0_grid) {
    if (candidates.empty()) candidates = cfg.tau0_grid->candidates;
    if (!budget) budget = cfg.tau0_grid->budget_seconds;
  }
  if (candidates.empty()) {
    throw ConfigError("--candidates", "no candidates given or configured");
  }
  if (!budget || !(*budget > 0.0)) {
    throw ConfigError("--budget", "a budget > 0 is required");
  }
  for (int c : candidates) {
    if (c < 1) throw ConfigError("--candidates", "candidates must be >= 1");
  }
  const auto obj = make_objective(cfg.objective);
  TauSearchResult result;
  try {
    result = grid_search_tau0(candidates, *budget, cfg.train, *obj, cfg.delay);
  } catch (const std::runtime_error& e) {
    log << e.what() << '\n';
    return kExitDiverged;
  }
  log << fmt::format("{:>6}  {:<24}{}\n", "tau", "final_loss", "diverged");
  for (const auto& e : result.entries) {
    log << fmt::format("{:>6}  {:<24}{}\n", e.tau, format_double(e.final_loss),
                       e.diverged ? "yes" : "no");
  }
  log << "best tau0: " << result.best_tau << '\n';
  if (opts.out) {
    {
      auto out = open_output(*opts.out);
      out << "tau,final_loss,diverged\n";
      for (const auto& e : result.entries) {
        out << fmt::format("{},{},{}\n", e.tau, e.final_loss, e.diverged ? 1 : 0);
      }
    }
    RunManifest manifest;
    manifest.command = "grid-tau0";
    manifest.config = to_json(cfg);
    manifest.config["grid"] = {{"candidates", candidates}, {"budget", *budget}};
    manifest.seed = cfg.train.seed;
    manifest.notes["best_tau"] = result.best_tau;
    manifest.outputs.push_back(opts.out->string());
    finish_manifest(manifest, clock);
    write_manifest(*opts.out, manifest);
  }
  return kExitOk;
}

}  // namespace adacomm::tools
