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

#include "adacomm/engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace adacomm {

namespace {

double local_beta_of(const MomentumConfig& momentum) {
  if (const auto* l = std::get_if<LocalMomentum>(&momentum)) return l->beta;
  if (const auto* b = std::get_if<BlockMomentum>(&momentum)) {
    return b->local_beta;
  }
  return 0.0;
}

bool beta_in_range(double beta) { return beta >= 0.0 && beta < 1.0; }

// Milestones converted to iteration counts, ascending.
std::vector<double> milestone_iterations(const TrainConfig& cfg,
                                         const Objective& objective) {
  std::vector<double> out = cfg.lr.milestones;
  if (cfg.lr.unit == MilestoneUnit::kEpochs) {
    const auto n = objective.dataset_size();
    if (!n) {
      throw std::invalid_argument(
          "epoch-based lr milestones need a dataset objective");
    }
    const double per_epoch = static_cast<double>(*n) /
                             (cfg.workers * static_cast<double>(cfg.batch_size));
    for (double& v : out) v *= per_epoch;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Round-by-round driver for run_pasgd. Kept as a class so the long loop body
// splits into named phases.
class Simulation {
 public:
  Simulation(const TrainConfig& cfg, const Objective& objective,
             const DelayModel& delay)
      : cfg_(cfg),
        objective_(objective),
        delay_(delay),
        milestones_(milestone_iterations(cfg, objective)),
        lr_(cfg.lr.base_lr),
        local_beta_(local_beta_of(cfg.momentum)),
        block_(std::holds_alternative<BlockMomentum>(cfg.momentum)) {}

  RunTrace run() {
    ModelVector x = cfg_.init_value
                        ? ModelVector(objective_.dimension(), *cfg_.init_value)
                        : objective_.initial_point();
    trace_.initial_loss = objective_.evaluate_loss(x);
    trace_.initial_grad_norm_sq = objective_.full_gradient(x).squared_norm();

    if (const auto* fixed = std::get_if<FixedPeriod>(&cfg_.schedule)) {
      tau_ = fixed->tau;
    } else {
      const auto& ada = std::get<AdaCommConfig>(cfg_.schedule);
      controller_.emplace(ada, trace_.initial_loss, cfg_.lr.base_lr);
      tau_ = ada.initial_period;
      if (ada.mode == AdaCommMode::kLrCoupledExact) {
        trace_.warnings.emplace_back(
            "lr_coupled_exact grows tau by (lr0/lr)^1.5 after a decay and "
            "may diverge; lr_coupled_approx is the safer rule");
      }
    }

    const std::size_t d = objective_.dimension();
    workers_.resize(static_cast<std::size_t>(cfg_.workers));
    for (int i = 0; i < cfg_.workers; ++i) {
      workers_[i] = WorkerState{x, ModelVector(d, 0.0), ModelVector(d, 0.0), i};
    }
    global_buffer_ = ModelVector(d, 0.0);

    try {
      loop(std::move(x));
    } catch (const NumericalError& e) {
      trace_.diverged = true;
      trace_.diagnostic = e.what();
    }
    return std::move(trace_);
  }

 private:
  void loop(ModelVector x) {
    double wall = 0.0;
    long long iteration = 0;
    long long round = 0;
    for (;;) {
      int tau = tau_;
      if (cfg_.stop.max_iterations) {
        const long long left = *cfg_.stop.max_iterations - iteration;
        if (left <= 0) break;
        tau = static_cast<int>(std::min<long long>(tau, left));
      }
      RngStream delay_rng =
          RngStream::substream(cfg_.seed, StreamTag::kDelay,
                               {static_cast<std::uint64_t>(round)});
      const double dt = sample_round_time(delay_, cfg_.workers, tau, delay_rng);
      if (cfg_.stop.max_seconds && wall + dt > *cfg_.stop.max_seconds) break;

      check_lr_condition(tau);
      x = local_phase(x, tau, round);

      wall += dt;
      iteration += tau;
      ++round;

      const double loss = objective_.evaluate_loss(x);
      if (!std::isfinite(loss) || loss > kDivergenceLoss) {
        std::ostringstream msg;
        msg << "diverged at round " << round << ": loss " << loss;
        throw NumericalError(msg.str());
      }
      const double gnorm = objective_.full_gradient(x).squared_norm();
      trace_.records.push_back(
          TraceRecord{wall, iteration, round, tau, lr_, loss, gnorm});

      after_sync(iteration, wall, loss);
    }
  }

  ModelVector local_phase(const ModelVector& round_start, int tau,
                          long long round) {
    std::vector<RngStream> streams;
    streams.reserve(workers_.size());
    for (auto& w : workers_) {
      w.accumulated.fill(0.0);
      if (block_) w.momentum.fill(0.0);
      streams.push_back(RngStream::substream(
          cfg_.seed, StreamTag::kWorker,
          {static_cast<std::uint64_t>(w.worker_id),
           static_cast<std::uint64_t>(round)}));
    }
    if (cfg_.dense_stats) record_dense(round_start, round + 1, 1);

    for (int k = 0; k < tau; ++k) {
      for (std::size_t i = 0; i < workers_.size(); ++i) {
        try {
          local_step(workers_[i], objective_, lr_, cfg_.batch_size,
                     local_beta_, streams[i]);
        } catch (const NumericalError& e) {
          std::ostringstream msg;
          msg << e.what() << " (worker " << i << ", round " << round + 1
              << ", local step " << k + 1 << ")";
          throw NumericalError(msg.str());
        }
      }
      if (cfg_.dense_stats && k + 1 < tau) {
        record_dense(average_models(std::span<const WorkerState>(workers_)),
                     round + 1, k + 2);
      }
    }

    std::vector<ModelVector> directions;
    directions.reserve(workers_.size());
    for (const auto& w : workers_) directions.push_back(w.accumulated);
    const ModelVector mean_direction = average_models(directions);

    ModelVector next;
    if (block_) {
      const double beta = std::get<BlockMomentum>(cfg_.momentum).global_beta;
      auto update = block_momentum_round(global_buffer_, round_start,
                                         mean_direction, beta, lr_);
      global_buffer_ = std::move(update.buffer);
      next = std::move(update.model);
    } else {
      next = round_start;
      next.axpy(-lr_, mean_direction);
    }
    if (!next.all_finite()) {
      throw NumericalError("non-finite averaged model");
    }
    for (auto& w : workers_) w.x = next;
    return next;
  }

  void record_dense(const ModelVector& xbar, long long round, int step) {
    trace_.dense.push_back(DenseGradRecord{
        round, step, objective_.full_gradient(xbar).squared_norm()});
  }

  void after_sync(long long iteration, double wall, double loss) {
    int crossed = 0;
    while (next_milestone_ < milestones_.size() &&
           milestones_[next_milestone_] <= static_cast<double>(iteration)) {
      ++next_milestone_;
      ++crossed;
    }

    const bool deferring =
        controller_ && controller_->config().defer_lr_decay;
    if (!deferring) {
      for (int i = 0; i < crossed; ++i) lr_ *= cfg_.lr.decay_factor;
    } else {
      // Decays wait for tau == 1; when several have stacked up they are
      // released one per checkpoint.
      pending_decays_ += crossed;
      if (pending_decays_ > 0 && !controller_->should_defer_lr_decay() &&
          !released_since_checkpoint_) {
        lr_ *= cfg_.lr.decay_factor;
        --pending_decays_;
        released_since_checkpoint_ = true;
      }
    }

    if (controller_ && controller_->checkpoint_due(wall)) {
      PeriodDecision decision = controller_->next_tau(loss, lr_, wall);
      tau_ = decision.period;
      trace_.decisions.push_back(decision);
      released_since_checkpoint_ = false;
    }
  }

  void check_lr_condition(int tau) {
    if (!cfg_.bound_tracking) return;
    if (tau == checked_tau_ && lr_ == checked_lr_) return;
    checked_tau_ = tau;
    checked_lr_ = lr_;
    const auto report =
        validate_lr(lr_, cfg_.bound_tracking->smoothness, tau,
                    cfg_.bound_tracking->variance_slope, cfg_.workers);
    if (report.ok()) return;
    std::ostringstream msg;
    msg << "learning-rate condition violated at lr=" << lr_ << ", tau=" << tau
        << ": lr L + lr^2 L^2 tau(tau-1) = " << report.local_update_lhs
        << ", variance-aware lhs = " << report.variance_aware_lhs;
    trace_.warnings.push_back(msg.str());
  }

  const TrainConfig& cfg_;
  const Objective& objective_;
  const DelayModel& delay_;
  std::vector<double> milestones_;
  std::size_t next_milestone_ = 0;
  int pending_decays_ = 0;
  bool released_since_checkpoint_ = false;
  double lr_;
  double local_beta_;
  bool block_;
  int tau_ = 1;
  int checked_tau_ = 0;
  double checked_lr_ = 0.0;
  std::optional<AdaCommController> controller_;
  std::vector<WorkerState> workers_;
  ModelVector global_buffer_;
  RunTrace trace_;
};

}  // namespace

void TrainConfig::validate() const {
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  if (batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
  if (!(lr.base_lr > 0.0) || !std::isfinite(lr.base_lr)) {
    throw std::invalid_argument("lr must be > 0");
  }
  if (!(lr.decay_factor > 0.0 && lr.decay_factor <= 1.0)) {
    throw std::invalid_argument("lr decay factor must be in (0,1]");
  }
  for (double m : lr.milestones) {
    if (!(m >= 0.0)) throw std::invalid_argument("lr milestones must be >= 0");
  }
  std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, LocalMomentum>) {
          if (!beta_in_range(m.beta))
            throw std::invalid_argument("momentum beta must be in [0,1)");
        } else if constexpr (std::is_same_v<T, BlockMomentum>) {
          if (!beta_in_range(m.global_beta) || !beta_in_range(m.local_beta))
            throw std::invalid_argument("momentum betas must be in [0,1)");
        }
      },
      momentum);
  if (const auto* fixed = std::get_if<FixedPeriod>(&schedule)) {
    if (fixed->tau < 1) throw std::invalid_argument("tau must be >= 1");
  } else {
    std::get<AdaCommConfig>(schedule).validate();
  }
  const bool has_time = stop.max_seconds && *stop.max_seconds > 0.0;
  const bool has_iters = stop.max_iterations && *stop.max_iterations > 0;
  if (!has_time && !has_iters) {
    throw std::invalid_argument(
        "stop criteria need max_seconds > 0 or max_iterations > 0");
  }
  if (init_value && !std::isfinite(*init_value)) {
    throw std::invalid_argument("init_value must be finite");
  }
}

void local_step(WorkerState& worker, const Objective& objective, double lr,
                std::size_t batch_size, double local_beta, RngStream& rng) {
  if (!(lr > 0.0)) throw std::invalid_argument("local_step: lr must be > 0");
  ModelVector g = objective.stochastic_gradient(worker.x, batch_size, rng);
  if (!g.all_finite()) {
    throw NumericalError("non-finite stochastic gradient");
  }
  if (local_beta > 0.0) {
    worker.momentum.scale(local_beta).axpy(1.0, g);
    g = worker.momentum;
  }
  worker.x.axpy(-lr, g);
  worker.accumulated.axpy(1.0, g);
}

ModelVector average_models(std::span<const ModelVector> models) {
  if (models.empty()) {
    throw std::invalid_argument("average_models: no models");
  }
  const std::size_t d = models.front().size();
  ModelVector sum(d, 0.0);
  for (const auto& m : models) {
    require_same_dimension(d, m.size(), "average_models");
    for (std::size_t j = 0; j < d; ++j) sum[j] += m[j];
  }
  const double count = static_cast<double>(models.size());
  for (std::size_t j = 0; j < d; ++j) sum[j] /= count;
  return sum;
}

ModelVector average_models(std::span<const WorkerState> workers) {
  std::vector<ModelVector> xs;
  xs.reserve(workers.size());
  for (const auto& w : workers) xs.push_back(w.x);
  return average_models(xs);
}

BlockMomentumUpdate block_momentum_round(const ModelVector& global_buffer,
                                         const ModelVector& round_start,
                                         const ModelVector& accumulated,
                                         double global_beta, double lr) {
  require_same_dimension(round_start.size(), global_buffer.size(),
                         "block_momentum_round");
  require_same_dimension(round_start.size(), accumulated.size(),
                         "block_momentum_round");
  BlockMomentumUpdate out{global_buffer, round_start};
  out.buffer.scale(global_beta).axpy(1.0, accumulated);
  out.model.axpy(-lr, out.buffer);
  return out;
}

LrConditionReport validate_lr(double lr, double smoothness, int tau,
                              double variance_slope, int workers) {
  if (!(lr > 0.0) || !(smoothness > 0.0) || tau < 1 || workers < 1 ||
      !(variance_slope >= 0.0)) {
    throw std::invalid_argument(
        "validate_lr: need lr > 0, L > 0, tau >= 1, m >= 1, M >= 0");
  }
  const double a = lr * smoothness;
  const double t = static_cast<double>(tau);
  LrConditionReport r;
  r.local_update_lhs = a + a * a * t * (t - 1.0);
  r.local_update_ok = r.local_update_lhs <= 1.0;
  r.variance_aware_lhs = a * a * (t - 1.0) * (2.0 * variance_slope + t) +
                         a * (variance_slope / workers + 1.0);
  r.variance_aware_ok = r.variance_aware_lhs <= 1.0;
  return r;
}

RunTrace run_pasgd(const TrainConfig& config, const Objective& objective,
                   const DelayModel& delay) {
  config.validate();
  return Simulation(config, objective, delay).run();
}

}  // namespace adacomm
