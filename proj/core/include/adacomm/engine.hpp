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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "adacomm/controller.hpp"
#include "adacomm/delay.hpp"
#include "adacomm/model_vector.hpp"
#include "adacomm/objectives.hpp"
#include "adacomm/rng.hpp"

namespace adacomm {

struct NoMomentum {};
/// Heavy-ball on each worker: buf = beta buf + g, x -= lr buf. Buffers are
/// private to each worker and survive averaging.
struct LocalMomentum {
  double beta = 0.9;
};
/// Global momentum on the accumulated per-round update; local buffers are
/// cleared at the start of every local-update period.
struct BlockMomentum {
  double global_beta = 0.3;
  double local_beta = 0.9;
};
using MomentumConfig = std::variant<NoMomentum, LocalMomentum, BlockMomentum>;

struct FixedPeriod {
  int tau = 1;
};
using CommSchedule = std::variant<FixedPeriod, AdaCommConfig>;

enum class MilestoneUnit { kIterations, kEpochs };

/// Step decay: lr = base_lr * decay_factor^(milestones passed).
/// Decays only take effect at synchronisation boundaries.
struct LrSchedule {
  double base_lr = 0.1;
  double decay_factor = 0.1;
  std::vector<double> milestones;
  MilestoneUnit unit = MilestoneUnit::kIterations;
};

struct StopCriteria {
  std::optional<double> max_seconds;
  std::optional<long long> max_iterations;
};

/// Constants used to check the learning-rate conditions of the bounds while
/// training. Violations are reported as warnings; the run still proceeds.
struct BoundTracking {
  double smoothness = 1.0;
  double variance_slope = 0.0;
};

struct TrainConfig {
  int workers = 1;
  std::size_t batch_size = 1;
  LrSchedule lr;
  MomentumConfig momentum = NoMomentum{};
  CommSchedule schedule = FixedPeriod{1};
  StopCriteria stop;
  std::uint64_t seed = 1;
  /// Fills every coordinate of x_1; nullopt uses Objective::initial_point().
  std::optional<double> init_value;
  /// Materialise the virtual average after every local step.
  bool dense_stats = false;
  std::optional<BoundTracking> bound_tracking;

  void validate() const;
};

struct WorkerState {
  ModelVector x;
  ModelVector momentum;
  /// Sum of the directions applied since the last averaging step, so that
  /// x = x_round_start - lr * accumulated while lr is fixed within a round.
  ModelVector accumulated;
  int worker_id = 0;
};

/// One row per synchronisation.
struct TraceRecord {
  double wall_clock = 0.0;
  long long iteration = 0;
  long long round = 0;
  int tau = 1;
  double lr = 0.0;
  double train_loss = 0.0;
  double grad_norm_sq = 0.0;
};

/// ||grad F(xbar)||^2 at local step `step` (1-based) of `round`.
struct DenseGradRecord {
  long long round = 0;
  int step = 0;
  double grad_norm_sq = 0.0;
};

struct RunTrace {
  std::vector<TraceRecord> records;
  std::vector<PeriodDecision> decisions;
  std::vector<DenseGradRecord> dense;
  std::vector<std::string> warnings;
  double initial_loss = 0.0;
  double initial_grad_norm_sq = 0.0;
  bool diverged = false;
  std::string diagnostic;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kDivergenceLoss = 1.0e6;

/// One local SGD step on a worker: x -= lr * d with d = g (local_beta == 0)
/// or the heavy-ball buffer beta buf + g. Throws NumericalError if the
/// stochastic gradient is not finite.
void local_step(WorkerState& worker, const Objective& objective, double lr,
                std::size_t batch_size, double local_beta, RngStream& rng);

/// Arithmetic mean, summed in index order and divided by the count.
ModelVector average_models(std::span<const ModelVector> models);
ModelVector average_models(std::span<const WorkerState> workers);

struct BlockMomentumUpdate {
  ModelVector buffer;
  ModelVector model;
};

/// buf' = beta buf + G, x' = x_round_start - lr buf'.
BlockMomentumUpdate block_momentum_round(const ModelVector& global_buffer,
                                         const ModelVector& round_start,
                                         const ModelVector& accumulated,
                                         double global_beta, double lr);

struct LrConditionReport {
  /// lr L + lr^2 L^2 tau (tau - 1)
  double local_update_lhs = 0.0;
  bool local_update_ok = false;
  /// lr^2 L^2 (tau - 1)(2M + tau) + lr L (M/m + 1)
  double variance_aware_lhs = 0.0;
  bool variance_aware_ok = false;

  bool ok() const noexcept { return local_update_ok && variance_aware_ok; }
};

LrConditionReport validate_lr(double lr, double smoothness, int tau,
                              double variance_slope, int workers);

/// Simulates periodic-averaging SGD with m virtual workers.
///
/// Each round draws its wall-clock cost from the delay model and runs tau
/// local steps per worker before averaging into one TraceRecord. Worker noise for
/// round r comes from substream (seed, worker, r) and round timing from
/// (seed, delay, r), so the trace is a pure function of (config, seed).
/// Divergence (non-finite values or loss > 1e6) ends the run with
/// `diverged` set; the offending round is not recorded.
RunTrace run_pasgd(const TrainConfig& config, const Objective& objective,
                   const DelayModel& delay);

}  // namespace adacomm
