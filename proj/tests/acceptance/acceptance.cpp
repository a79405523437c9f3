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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "adacomm/bounds.hpp"
#include "adacomm/controller.hpp"
#include "adacomm/delay.hpp"
#include "adacomm/engine.hpp"
#include "adacomm/objectives.hpp"
#include "adacomm/tau_search.hpp"
#include "adacomm/tools/csv.hpp"
#include "adacomm/trace_metrics.hpp"
#include "oracles.hpp"

namespace {

using namespace adacomm;
namespace oracle = adacomm::testing;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += "failed: " + what;
    }
  }
  void note(const std::string& text) {
    if (!detail.empty()) detail += "; ";
    detail += text;
  }
};

// --- 1 ----------------------------------------------------------------------

Outcome speedup_formula() {
  Outcome o;
  double worst = 0.0;
  for (int tau : {1, 2, 5, 10, 100}) {
    const double want = 1.9 / (1.0 + 0.9 / tau);
    worst = std::max(worst, std::abs(speedup_ratio(0.9, tau) - want));
  }
  o.require(worst <= 1e-12, "speedup_ratio(0.9, tau) == 1.9/(1+0.9/tau)");
  const double limit = speedup_ratio(0.9, 100000000);
  o.require(std::abs(limit - 1.9) < 1e-6, "limit 1.9");
  o.note(fmt::format("max abs err {:.1e}, tau=1e8 gives {:.7f}", worst, limit));
  return o;
}

// --- 2 ----------------------------------------------------------------------

// Distribution-free bounds on the p-quantile: order statistics 3 binomial
// standard deviations either side of n p.
double quantile_bound(const EmpiricalCdf& cdf, double p, double sigmas) {
  const double n = static_cast<double>(cdf.size());
  const double idx = n * p + sigmas * std::sqrt(n * p * (1.0 - p));
  const auto i = static_cast<std::size_t>(std::clamp(idx, 0.0, n - 1.0));
  return cdf.sorted()[i];
}

Outcome straggler_analytics() {
  Outcome o;
  const DelayModel dm(ExponentialTime{1.0}, 1.0, ConstantScaling{});
  const EmpiricalCdf sync = runtime_tail(dm, 16, 1, 100000, 1);
  const EmpiricalCdf pavg = runtime_tail(dm, 16, 10, 100000, 2);
  const double expected = oracle::harmonic(16) + 1.0;
  o.require(std::abs(sync.mean() - expected) <= 0.02 * expected,
            "sync mean within 2% of H16 + 1");
  const double se = std::hypot(sync.stderr_of_mean(), pavg.stderr_of_mean());
  o.require(sync.mean() - pavg.mean() > 3.0 * se, "mean gap > 3 sigma");
  const double sync_p99_lo = quantile_bound(sync, 0.99, -3.0);
  const double pavg_p99_hi = quantile_bound(pavg, 0.99, 3.0);
  o.require(pavg_p99_hi < sync_p99_lo, "p99 below at 3 sigma");
  o.note(fmt::format("sync mean {:.4f} (want {:.4f}), tau=10 mean {:.4f}, "
                     "p99 {:.3f} vs {:.3f}",
                     sync.mean(), expected, pavg.mean(), sync.quantile(0.99),
                     pavg.quantile(0.99)));
  return o;
}

// --- 3 ----------------------------------------------------------------------

Outcome erlang_variance() {
  Outcome o;
  const DelayModel dm(ExponentialTime{1.0}, 0.0, ConstantScaling{});
  std::string text;
  for (int tau : {5, 10}) {
    constexpr int n = 100000;
    std::vector<double> ybar(n);
    for (int s = 0; s < n; ++s) {
      RngStream rng = RngStream::substream(30 + tau, StreamTag::kSample,
                                           {static_cast<std::uint64_t>(s)});
      ybar[s] = sample_round_time(dm, 1, tau, rng) / tau;
    }
    const EmpiricalCdf cdf(std::move(ybar));
    const double want = 1.0 / tau;
    o.require(std::abs(cdf.variance() - want) <= 0.05 * want,
              fmt::format("Var(Ybar) within 5% at tau={}", tau));
    text += fmt::format("tau={} var {:.5f} (want {:.5f}) ", tau, cdf.variance(), want);
  }
  o.note(text);
  return o;
}

// --- 4 ----------------------------------------------------------------------

BoundParams reference_bound() {
  BoundParams p;
  p.initial_loss = 1.0;
  p.loss_floor = 0.0;
  p.smoothness = 1.0;
  p.variance = 1.0;
  p.workers = 16;
  p.compute_time = 1.0;
  p.comm_delay = 1.0;
  return p;
}

Outcome bound_curves() {
  Outcome o;
  const BoundParams p = reference_bound();
  const double f1 = error_floor(p, 0.08, 1.0);
  const double f10 = error_floor(p, 0.08, 10.0);
  o.require(std::abs(f1 - 0.005) <= 1e-12, "floor(tau=1) = 0.005");
  o.require(std::abs(f10 - 0.0626) <= 1e-12, "floor(tau=10) = 0.0626");
  const auto cross = bound_crossover(p, 0.08, 10.0, 1.0, 1.0, 1e6);
  o.require(cross.has_value(), "crossover exists");
  if (!cross) return o;
  o.require(std::abs(*cross - 390.6) <= 0.01 * 390.6, "crossover within 1% of 390.6");
  bool ordered = true;
  for (double t = 1.0; t <= 1e6; t *= 1.05) {
    const double diff = error_runtime_bound(p, 0.08, 10.0, t) -
                        error_runtime_bound(p, 0.08, 1.0, t);
    if (t < *cross * (1 - 1e-9) && !(diff < 0)) ordered = false;
    if (t > *cross * (1 + 1e-9) && !(diff > 0)) ordered = false;
  }
  o.require(ordered, "tau=10 below tau=1 before the crossover, above after");
  o.note(fmt::format("floors {} / {}, crossover T = {:.4f}", f1, f10, *cross));
  return o;
}

// --- 5 ----------------------------------------------------------------------

Outcome optimal_tau_argmin() {
  Outcome o;
  std::mt19937_64 gen(2024);
  auto u = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
  };
  int within = 0;
  int interior = 0;
  for (int set = 0; set < 20; ++set) {
    const double f1 = u(0.5, 5.0), finf = u(0.0, 0.4), lr = u(0.005, 0.1);
    const double l = u(0.5, 2.0), c = u(0.1, 2.0), y = u(0.2, 2.0);
    const double d = u(0.1, 20.0), t = std::exp(u(std::log(50.0), std::log(1e6)));
    const int m = 1 + static_cast<int>(u(0.0, 32.0));
    const double star = optimal_tau(f1, finf, d, lr, l, c, t);
    int best = 1;
    double best_val = oracle::bound_oracle(f1, finf, lr, l, c, m, y, d, 1.0, t);
    for (int tau = 2; tau <= 1000; ++tau) {
      const double v = oracle::bound_oracle(f1, finf, lr, l, c, m, y, d, tau, t);
      if (v < best_val) {
        best_val = v;
        best = tau;
      }
    }
    if (star > 1.0 && star < 1000.0) ++interior;
    const double rounded = std::clamp(std::round(star), 1.0, 1000.0);
    if (std::abs(best - rounded) <= 1.0) ++within;
  }
  o.require(within == 20, "argmin within +-1 of round(tau*) for all 20 sets");
  o.note(fmt::format("{}/20 sets, {} with 1 < tau* < 1000", within, interior));
  return o;
}

// --- 6 ----------------------------------------------------------------------

std::unique_ptr<Objective> objective_of(ObjectiveKind kind) {
  ObjectiveSpec spec;
  spec.kind = kind;
  spec.dimension = kind == ObjectiveKind::kNoisyQuadratic ? 8 : 4;
  spec.noise = NoiseParams{2.0, 0.5};
  spec.n_points = 64;
  spec.hidden_units = 5;
  spec.data_seed = 11;
  return make_objective(spec);
}

Outcome gradient_oracle() {
  Outcome o;
  std::mt19937_64 gen(6);
  std::normal_distribution<double> normal(0.0, 1.0);
  double worst_fd = 0.0;
  double worst_bias_z = 0.0;
  for (auto kind : {ObjectiveKind::kNoisyQuadratic, ObjectiveKind::kLogistic,
                    ObjectiveKind::kTinyMlp}) {
    const auto obj = objective_of(kind);
    std::vector<ModelVector> points;
    for (int i = 0; i < 10; ++i) {
      ModelVector x(obj->dimension());
      for (double& v : x) v = 0.5 * normal(gen);
      points.push_back(x);
    }
    for (const auto& x : points) {
      const ModelVector g = obj->full_gradient(x);
      ModelVector diff = oracle::finite_difference_gradient(*obj, x);
      diff.axpy(-1.0, g);
      const double rel = std::sqrt(diff.squared_norm()) /
                         std::max(std::sqrt(g.squared_norm()), 1e-8);
      worst_fd = std::max(worst_fd, rel);
    }
    // Unbiasedness: per-coordinate mean of 1e5 draws within 4 standard errors.
    const ModelVector& x = points.front();
    const ModelVector g = obj->full_gradient(x);
    constexpr int n = 100000;
    std::vector<double> sum(x.size(), 0.0), sum_sq(x.size(), 0.0);
    RngStream rng = RngStream::substream(6, StreamTag::kSample,
                                         {static_cast<std::uint64_t>(kind)});
    for (int s = 0; s < n; ++s) {
      const ModelVector sg = obj->stochastic_gradient(x, 1, rng);
      for (std::size_t j = 0; j < x.size(); ++j) {
        sum[j] += sg[j];
        sum_sq[j] += sg[j] * sg[j];
      }
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double mean = sum[j] / n;
      const double var = std::max(sum_sq[j] / n - mean * mean, 0.0);
      const double se = std::sqrt(var / n);
      if (se > 0) worst_bias_z = std::max(worst_bias_z, std::abs(mean - g[j]) / se);
    }
  }
  o.require(worst_fd <= 1e-5, "finite differences within 1e-5 relative");
  o.require(worst_bias_z <= 4.0, "stochastic gradients unbiased");

  // Variance law on the quadratic: E||g - grad F||^2 = (M ||grad F||^2 + C) / b.
  const auto q = objective_of(ObjectiveKind::kNoisyQuadratic);
  double worst_var = 0.0;
  for (std::size_t batch : {std::size_t{1}, std::size_t{4}}) {
    for (double scale : {0.0, 0.3, 1.0}) {
      const ModelVector x(q->dimension(), scale);
      const ModelVector g = q->full_gradient(x);
      const double want = (2.0 * g.squared_norm() + 0.5) / static_cast<double>(batch);
      RngStream rng = RngStream::substream(61, StreamTag::kSample,
                                           {batch, static_cast<std::uint64_t>(scale * 10)});
      double acc = 0.0;
      constexpr int n = 100000;
      for (int s = 0; s < n; ++s) {
        ModelVector e = q->stochastic_gradient(x, batch, rng);
        e.axpy(-1.0, g);
        acc += e.squared_norm();
      }
      worst_var = std::max(worst_var, std::abs(acc / n - want) / want);
    }
  }
  o.require(worst_var <= 0.05, "variance law within 5%");
  o.note(fmt::format("worst FD rel err {:.2e}, worst bias z {:.2f}, "
                     "worst variance rel err {:.4f}",
                     worst_fd, worst_bias_z, worst_var));
  return o;
}

// --- 7 ----------------------------------------------------------------------

bool identical(const RunTrace& a, const std::vector<TraceRecord>& b) {
  if (a.records.size() != b.size()) return false;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto& x = a.records[i];
    const auto& y = b[i];
    if (x.train_loss != y.train_loss || x.grad_norm_sq != y.grad_norm_sq ||
        x.wall_clock != y.wall_clock || x.iteration != y.iteration) {
      return false;
    }
  }
  return true;
}

Outcome engine_equivalences() {
  Outcome o;
  const oracle::Scenario s;
  int checked = 0;
  bool sync_ok = true, block_ok = true, repeat_ok = true;
  for (std::uint64_t seed : {1, 2, 3}) {
    TrainConfig cfg = s.config(1, seed);
    cfg.stop = StopCriteria{std::nullopt, 300};
    const RunTrace plain = run_pasgd(cfg, s.objective, s.delay);
    const auto ref = oracle::sync_sgd_oracle(s.objective, s.objective.initial_point(),
                                             4, 0.05, 1, seed, 300, 1.0, 4.0);
    sync_ok &= identical(plain, ref);
    TrainConfig block = cfg;
    block.momentum = BlockMomentum{0.0, 0.0};
    block_ok &= identical(run_pasgd(block, s.objective, s.delay), ref);
    TrainConfig local = s.config(8, seed);
    local.momentum = LocalMomentum{0.5};
    const RunTrace a = run_pasgd(local, s.objective, s.delay);
    repeat_ok &= identical(run_pasgd(local, s.objective, s.delay), a.records);
    ++checked;
  }
  o.require(sync_ok, "tau=1 trace bit-identical to the straight-line sync oracle");
  o.require(block_ok, "block momentum with zero betas identical to sync SGD");
  o.require(repeat_ok, "repeated seeds reproduce the trace");
  o.note(fmt::format("{} seeds, 300 rounds each", checked));
  return o;
}

// --- 8 ----------------------------------------------------------------------

double sample_sd(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

std::vector<TraceRecord> load_golden(const std::string& name) {
  std::ifstream in(std::string(ADACOMM_GOLDEN_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing golden trace " + name);
  return tools::read_trace_csv(in);
}

Outcome tradeoff() {
  Outcome o;
  const oracle::Scenario s;
  constexpr double kTarget = 0.05;

  const RunTrace sync = run_pasgd(s.config(1, 1), s.objective, s.delay);
  const RunTrace local = run_pasgd(s.config(16, 1), s.objective, s.delay);
  const auto t_sync = time_to_target(sync, kTarget);
  const auto t_local = time_to_target(local, kTarget);
  o.require(t_sync && t_local, "both runs reach the loose target");
  if (t_sync && t_local) {
    o.require(*t_local < 0.6 * *t_sync, "tau=16 reaches the target in < 0.6x the time");
  }
  const double p_sync = plateau_loss(sync);
  const double p_local = plateau_loss(local);
  o.require(p_sync < p_local, "tau=1 plateau below tau=16 at the fixed seed");

  std::vector<double> ps, pl;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    ps.push_back(plateau_loss(run_pasgd(s.config(1, seed), s.objective, s.delay)));
    pl.push_back(plateau_loss(run_pasgd(s.config(16, seed), s.objective, s.delay)));
  }
  const double pooled = std::sqrt(0.5 * (std::pow(sample_sd(ps), 2) +
                                         std::pow(sample_sd(pl), 2)));
  const double gap = mean_of(pl) - mean_of(ps);
  o.require(gap >= 3.0 * pooled, "5-seed plateau gap >= 3x pooled sd");

  // Golden traces: the engine still produces them, and the sync one agrees
  // bit for bit with the independent oracle.
  bool golden_ok = true;
  for (int tau : {1, 16}) {
    const auto golden = load_golden("tau" + std::to_string(tau) + ".csv");
    TrainConfig cfg = s.config(tau, 7);
    cfg.stop.max_seconds = 300.0;
    cfg.init_value = 1.0;
    golden_ok &= identical(run_pasgd(cfg, s.objective, s.delay), golden);
  }
  const auto golden1 = load_golden("tau1.csv");
  const auto ref = oracle::sync_sgd_oracle(s.objective, ModelVector(10, 1.0), 4, 0.05,
                                           1, 7, static_cast<long long>(golden1.size()),
                                           1.0, 4.0);
  bool oracle_ok = golden1.size() == ref.size();
  for (std::size_t i = 0; oracle_ok && i < ref.size(); ++i) {
    oracle_ok = golden1[i].train_loss == ref[i].train_loss &&
                golden1[i].wall_clock == ref[i].wall_clock;
  }
  o.require(golden_ok, "engine reproduces the golden traces");
  o.require(oracle_ok, "golden tau=1 trace matches the sync oracle");

  o.note(fmt::format("time to {}: tau=1 {}s, tau=16 {}s; plateau {:.5f} vs {:.5f}; "
                     "5-seed gap {:.5f}, pooled sd {:.5f}",
                     kTarget, t_sync.value_or(-1), t_local.value_or(-1), p_sync,
                     p_local, gap, pooled));
  return o;
}

// --- 9 ----------------------------------------------------------------------

Outcome adacomm_win_win() {
  Outcome o;
  const oracle::Scenario s;
  constexpr int kSeeds = 200;
  constexpr double kStep = 10.0;
  constexpr double kHorizon = 2000.0;
  constexpr std::size_t kHalfWidth = 2;
  const std::vector<int> grid{1, 4, 16};

  const auto n = static_cast<std::size_t>(kHorizon / kStep);
  std::vector<double> sync_mean(n, 0.0), ada_mean(n, 0.0);
  bool monotone = true;
  std::vector<int> first_tau;
  for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
    const TrainConfig base = s.config(1, seed);
    const RunTrace sync = run_pasgd(base, s.objective, s.delay);

    TrainConfig ada_cfg = base;
    AdaCommConfig ada;
    ada.checkpoint_interval = 100.0;
    ada.gamma = 0.5;
    ada.initial_period = grid_search_tau0(grid, 100.0, base, s.objective, s.delay).best_tau;
    ada_cfg.schedule = ada;
    const RunTrace adaptive = run_pasgd(ada_cfg, s.objective, s.delay);
    first_tau.push_back(ada.initial_period);

    int prev = ada.initial_period;
    for (const auto& r : adaptive.records) {
      if (r.tau > prev) monotone = false;
      prev = r.tau;
    }
    const auto gs = loss_on_grid(sync, kStep, kHorizon);
    const auto ga = loss_on_grid(adaptive, kStep, kHorizon);
    for (std::size_t i = 0; i < n; ++i) {
      sync_mean[i] += gs[i] / kSeeds;
      ada_mean[i] += ga[i] / kSeeds;
    }
  }

  // Plateau: grid points strictly after half the budget.
  double sync_plateau = 0.0, ada_plateau = 0.0;
  const std::size_t half = n / 2;
  for (std::size_t i = half; i < n; ++i) {
    sync_plateau += sync_mean[i] / static_cast<double>(n - half);
    ada_plateau += ada_mean[i] / static_cast<double>(n - half);
  }
  const double target = 1.05 * sync_plateau;
  const auto ss = centered_mean(sync_mean, kHalfWidth);
  const auto sa = centered_mean(ada_mean, kHalfWidth);
  auto first_hit = [&](const std::vector<double>& v) -> std::optional<double> {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] <= target) return kStep * static_cast<double>(i + 1);
    }
    return std::nullopt;
  };
  const auto t_sync = first_hit(ss);
  const auto t_ada = first_hit(sa);
  o.require(t_sync && t_ada, "both reach 1.05x the sync plateau");
  if (t_sync && t_ada) {
    o.require(*t_ada <= 0.7 * *t_sync, "AdaComm time-to-target <= 0.7x sync");
  }
  const double rel = std::abs(ada_plateau - sync_plateau) / sync_plateau;
  o.require(rel <= 0.05, "AdaComm plateau within 5% of sync");
  o.require(monotone, "tau sequence nonincreasing");
  const auto picked16 = std::count(first_tau.begin(), first_tau.end(), 16);
  o.note(fmt::format("{} seeds; target {:.5f}; time {}s vs {}s (ratio {:.3f}); "
                     "plateau {:.5f} vs {:.5f} ({:+.2f}%); tau0=16 chosen {}x",
                     kSeeds, target, t_ada.value_or(-1), t_sync.value_or(-1),
                     t_ada && t_sync ? *t_ada / *t_sync : -1.0, ada_plateau,
                     sync_plateau, 100.0 * (ada_plateau - sync_plateau) / sync_plateau,
                     picked16));
  return o;
}

// --- 10 ---------------------------------------------------------------------

Outcome conditions_checker() {
  Outcome o;
  const auto harmonic = check_adaptive_conditions(PowerRate{0.1, 1.0}, BoundedRate{1.0, 16.0});
  o.require(harmonic.pass(), "lr = a/(r+1), bounded tau passes");
  for (const auto& c : harmonic.adaptive) o.require(c.holds, c.name);
  const auto flat = check_adaptive_conditions(PowerRate{0.1, 0.0}, PowerRate{4.0, 0.0});
  o.require(!flat.pass(), "constant lr and tau fail");

  // Mini-batch SGD: sum lr = inf iff p <= 1, sum lr^2 < inf iff p > 1/2.
  int agree = 0, total = 0;
  for (double p = 0.0; p <= 2.0 + 1e-9; p += 0.05) {
    const auto r = check_adaptive_conditions(PowerRate{0.2, p}, PowerRate{3.0, 0.0});
    ++total;
    if (!r.constant_tau_reduction) continue;
    const auto& red = *r.constant_tau_reduction;
    const bool want_div = p <= 1.0;
    const bool want_conv = 2.0 * p > 1.0;
    const bool want_pass = want_div && want_conv;
    if (red[0].holds == want_div && red[1].holds == want_conv &&
        (r.adaptive[0].holds && r.adaptive[1].holds) == want_pass) {
      ++agree;
    }
  }
  o.require(agree == total, "constant-tau reduction reproduces SGD verdicts");
  o.note(fmt::format("{}/{} lr exponents agree", agree, total));
  return o;
}

// --- 11 ---------------------------------------------------------------------

Outcome simplified_identity() {
  Outcome o;
  std::mt19937_64 gen(11);
  auto u = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
  };
  double worst = 0.0;
  for (int set = 0; set < 10; ++set) {
    BoundParams p;
    p.initial_loss = u(0.5, 5.0);
    p.loss_floor = u(0.0, 0.4);
    p.smoothness = u(0.5, 2.0);
    p.variance = u(0.1, 2.0);
    p.workers = 1 + static_cast<int>(u(0.0, 32.0));
    p.compute_time = u(0.2, 2.0);
    p.comm_delay = u(0.0, 10.0);
    const double lr = u(0.005, 0.1);
    const int tau = 1 + static_cast<int>(u(0.0, 50.0));
    const long long rounds = 1 + static_cast<long long>(u(0.0, 1000.0));
    const std::vector<int> taus(static_cast<std::size_t>(rounds), tau);
    const long long k = rounds * tau;
    const double a = simplified_fixed_lr_bound(p, lr, taus, k);
    const double t = static_cast<double>(k) * (p.compute_time + p.comm_delay / tau);
    const double b = error_runtime_bound(p, lr, tau, t);
    worst = std::max(worst, std::abs(a - b) / std::abs(b));
  }
  o.require(worst <= 1e-12, "identity holds to 1e-12");
  o.note(fmt::format("worst relative difference {:.2e}", worst));
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"speedup formula", speedup_formula},
      {"straggler analytics", straggler_analytics},
      {"Erlang variance reduction", erlang_variance},
      {"bound curves", bound_curves},
      {"optimal tau", optimal_tau_argmin},
      {"gradient oracle", gradient_oracle},
      {"engine equivalences", engine_equivalences},
      {"error-runtime trade-off", tradeoff},
      {"AdaComm win-win", adacomm_win_win},
      {"conditions checker", conditions_checker},
      {"fixed-lr bound identity", simplified_identity},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!outcome.pass) ++failed;
    fmt::print("{} [{:2}] {} ({:.2f}s): {}\n", outcome.pass ? "PASS" : "FAIL", i + 1,
               criteria[i].first, secs, outcome.detail);
    std::fflush(stdout);
  }
  fmt::print("{}/{} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
