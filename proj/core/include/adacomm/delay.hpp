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
#include <map>
#include <variant>
#include <vector>

#include "adacomm/rng.hpp"

namespace adacomm {

// Per-step compute-time distributions Y.
struct ConstantTime {
  double value = 1.0;
};
struct ExponentialTime {
  double mean = 1.0;
};
/// shift + Exponential(mean). Not analysed in closed form anywhere; it is a
/// straggler model that runs through the same Monte-Carlo path.
struct ShiftedExponentialTime {
  double shift = 0.0;
  double mean = 1.0;
};
using ComputeTimeDist =
    std::variant<ConstantTime, ExponentialTime, ShiftedExponentialTime>;

// Communication scaling s(m).
struct ConstantScaling {};
/// s(m) = 2 log2(m), the reduction-tree parameter-server cost.
struct Log2TreeScaling {};
struct LinearScaling {};
/// Explicit s(m) values; m absent from the table is an error.
struct TableScaling {
  std::map<int, double> table;
};
using CommScaling =
    std::variant<ConstantScaling, Log2TreeScaling, LinearScaling, TableScaling>;

/// Distribution of per-step compute time plus the communication delay
/// D = D0 * s(m).
class DelayModel {
 public:
  DelayModel(ComputeTimeDist compute, double base_delay, CommScaling scaling);

  const ComputeTimeDist& compute() const noexcept { return compute_; }
  double base_delay() const noexcept { return base_delay_; }
  const CommScaling& scaling() const noexcept { return scaling_; }

  bool deterministic() const noexcept;
  double mean_compute_time() const noexcept;
  double sample_compute_time(RngStream& rng) const;

 private:
  ComputeTimeDist compute_;
  double base_delay_;
  CommScaling scaling_;
};

/// s(m); throws for m == 0 or an m missing from a TableScaling.
double scaling_factor(const CommScaling& scaling, int workers);

/// D0 * s(m).
double comm_delay(const DelayModel& model, int workers);

/// max_i sum_{k=1..tau} Y_{i,k} + D for one averaging round.
double sample_round_time(const DelayModel& model, int workers, int tau,
                         RngStream& rng);

struct RuntimeStats {
  int workers = 1;
  int tau = 1;
  double mean_round_time = 0.0;
  double mean_iteration_time = 0.0;
  /// Standard error of mean_iteration_time; zero for the closed form.
  double iteration_stderr = 0.0;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
  /// Per-iteration samples (round time / tau); empty for the closed form.
  std::vector<double> samples;
};

/// E[T_P-Avg] = E[max_i Ybar_i] + D / tau. Constant compute time is closed
/// form; otherwise sample i is drawn from its own substream (seed, i), so the
/// result is independent of evaluation order.
RuntimeStats expected_iteration_time(const DelayModel& model, int workers,
                                     int tau, std::size_t n_samples,
                                     std::uint64_t seed);

/// E[T_sync] / E[T_P-Avg] for constant Y and D: (1 + alpha) / (1 + alpha/tau).
double speedup_ratio(double alpha, int tau);

/// H_m = sum_{i=1..m} 1/i, so E[Y_{m:m}] = y H_m for Exponential(y).
double harmonic_number(int m);

/// Sorted sample set with quantile and CDF queries.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> samples);

  std::size_t size() const noexcept { return sorted_.size(); }
  double mean() const noexcept { return mean_; }
  double stderr_of_mean() const noexcept { return stderr_; }
  double variance() const noexcept { return variance_; }
  /// Fraction of samples <= x.
  double operator()(double x) const noexcept;
  /// Type-7 (linear interpolation) sample quantile, p in [0, 1].
  double quantile(double p) const;
  const std::vector<double>& sorted() const noexcept { return sorted_; }

 private:
  std::vector<double> sorted_;
  double mean_ = 0.0;
  double variance_ = 0.0;
  double stderr_ = 0.0;
};

/// Empirical distribution of the per-iteration time T_P-Avg (T_sync at
/// tau = 1). Requires n_samples >= 1000.
EmpiricalCdf runtime_tail(const DelayModel& model, int workers, int tau,
                          std::size_t n_samples, std::uint64_t seed);

}  // namespace adacomm
