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

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "adacomm/engine.hpp"

namespace adacomm {

/// Constants of the error-runtime bound for constant Y and D.
struct BoundParams {
  double initial_loss = 1.0;    // F(x_1)
  double loss_floor = 0.0;      // F_inf
  double smoothness = 1.0;      // L
  double variance = 1.0;        // C
  double variance_slope = 0.0;  // M
  int workers = 1;              // m
  double compute_time = 1.0;    // Y
  double comm_delay = 1.0;      // D

  void validate() const;
};

/// Minimal expected squared gradient norm within wall-clock T:
///   2 (F1 - F_inf) / (lr T) (Y + D / tau) + lr L C / m + lr^2 L^2 C (tau - 1)
/// tau is real-valued so the expression can be differentiated in tau.
double error_runtime_bound(const BoundParams& p, double lr, double tau,
                           double horizon);

/// The T -> infinity limit: lr L C / m + lr^2 L^2 C (tau - 1).
double error_floor(const BoundParams& p, double lr, double tau);

/// Wall-clock T in [t_lo, t_hi] where the tau_a and tau_b bound curves
/// cross, found by bisection on their difference to relative width `tol`.
/// nullopt when the difference does not change sign on the interval.
std::optional<double> bound_crossover(const BoundParams& p, double lr,
                                      double tau_a, double tau_b, double t_lo,
                                      double t_hi, double tol = 1e-12);

/// Fixed-lr bound for a variable period sequence after K = sum(taus)
/// iterations:
///   2 (F1 - F_inf) / (lr K) + lr L C / m
///     + lr^2 L^2 C (sum tau_j^2 / sum tau_j - 1)
/// Throws when K != sum(taus).
double simplified_fixed_lr_bound(const BoundParams& p, double lr,
                                 std::span<const int> taus, long long K);

// --- asymptotic conditions for variable lr and tau --------------------------

/// scale / (r + 1)^exponent. exponent 0 is a constant sequence.
struct PowerRate {
  double scale = 1.0;
  double exponent = 0.0;
};
/// Any sequence with lower <= value <= upper. Only meaningful for tau.
struct BoundedRate {
  double lower = 1.0;
  double upper = 1.0;
};
using RateDescriptor = std::variant<PowerRate, BoundedRate>;

/// Parses "const:a", "power:a,p" or "bounded:lo,hi". Throws
/// std::invalid_argument on anything else.
RateDescriptor parse_rate(std::string_view text);
std::string describe(const RateDescriptor& rate);

struct SeriesCondition {
  std::string name;
  /// Decay exponent s of the summand ~ (r+1)^(-s).
  double exponent = 0.0;
  bool series_diverges = false;
  bool required_divergent = false;
  bool holds = false;
};

struct ConditionsReport {
  /// sum lr tau = inf, sum lr^2 tau < inf, sum lr^3 tau^2 < inf
  std::array<SeriesCondition, 3> adaptive;
  /// Mini-batch SGD conditions (sum lr = inf, sum lr^2 < inf); present when
  /// tau is constant, where they must agree with `adaptive`.
  std::optional<std::array<SeriesCondition, 2>> constant_tau_reduction;

  bool pass() const noexcept;
};

/// Analytic p-series verdicts for the closed family of rate descriptors.
/// Throws if lr is a BoundedRate or a scale is not positive, or if a
/// bounded tau has lower < 1 or upper < lower.
ConditionsReport check_adaptive_conditions(const RateDescriptor& lr,
                                           const RateDescriptor& tau);

struct PartialSums {
  double lr_tau = 0.0;
  double lr2_tau = 0.0;
  double lr3_tau2 = 0.0;
};

/// Finite-sequence version: the three partial sums.
PartialSums adaptive_partial_sums(std::span<const double> lr,
                                  std::span<const double> tau);

// --- gradient statistic over a trace ----------------------------------------

/// sum_r lr_r tau_r g_r / sum_r lr_r tau_r.
double weighted_grad_stat(std::span<const double> grad_norm_sq,
                          std::span<const double> lr,
                          std::span<const double> tau);

/// Synchronisation-point proxy over records [first, last): each round's
/// squared gradient norm at its closing average stands in for the tau_r
/// local iterates of that round.
double weighted_grad_stat(const RunTrace& trace, std::size_t first = 0,
                          std::size_t last = static_cast<std::size_t>(-1));

/// Exact form over every local iterate, using RunTrace::dense (run with
/// dense_stats). Throws if the trace has no dense records.
double dense_weighted_grad_stat(const RunTrace& trace);

}  // namespace adacomm
