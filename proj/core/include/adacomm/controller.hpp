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

#include <optional>
#include <string_view>

namespace adacomm {

/// How the loss ratio and learning-rate ratio combine into a new period.
enum class AdaCommMode {
  /// tau_l = ceil(sqrt(F_l / F_0) * tau_0)
  kBasic,
  /// tau_l = ceil(sqrt((eta_0/eta_l)^3 * F_l / F_0) * tau_0). Grows very
  /// quickly after a 10x learning-rate decay and is known to diverge.
  kLrCoupledExact,
  /// tau_l = ceil(sqrt((eta_0/eta_l) * F_l / F_0) * tau_0)
  kLrCoupledApprox,
};

std::string_view to_string(AdaCommMode mode) noexcept;
std::optional<AdaCommMode> parse_adacomm_mode(std::string_view name);

struct AdaCommConfig {
  double checkpoint_interval = 0.0;  // T0, seconds of wall-clock
  int initial_period = 1;            // tau_0
  double gamma = 0.5;
  int slack = 0;
  AdaCommMode mode = AdaCommMode::kLrCoupledApprox;
  bool defer_lr_decay = true;
  int max_period = 100;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

enum class PeriodBranch { kFormula, kGamma };
std::string_view to_string(PeriodBranch branch) noexcept;

/// One controller decision, as written to the events CSV.
struct PeriodDecision {
  double wall_clock = 0.0;
  int interval = 0;
  double loss_ratio = 0.0;  // F_l / F_0
  double lr_ratio = 0.0;    // eta_0 / eta_l
  int candidate = 0;
  PeriodBranch branch = PeriodBranch::kFormula;
  int period = 0;
};

/// Communication-period state machine, stepped once per T0 checkpoint.
///
/// F_inf is taken as 0 in every rule, so only loss ratios enter. The caller
/// owns checkpoint timing: a checkpoint fires at the first synchronisation
/// whose wall-clock is >= l * T0.
class AdaCommController {
 public:
  AdaCommController(const AdaCommConfig& config, double initial_loss,
                    double initial_lr);

  const AdaCommConfig& config() const noexcept { return config_; }
  int current_period() const noexcept { return tau_prev_; }
  int interval() const noexcept { return interval_; }
  double initial_loss() const noexcept { return initial_loss_; }
  double initial_lr() const noexcept { return initial_lr_; }
  double next_checkpoint() const noexcept { return next_checkpoint_; }

  bool checkpoint_due(double wall_clock) const noexcept {
    return wall_clock >= next_checkpoint_;
  }

  /// Computes tau_l from the current loss and learning rate, records it as
  /// the new current period and advances the checkpoint past wall_clock.
  /// Throws for loss <= 0 or lr <= 0.
  PeriodDecision next_tau(double loss_now, double lr_now,
                          double wall_clock = 0.0);

  /// True while a scheduled learning-rate decay must wait for tau to reach 1.
  bool should_defer_lr_decay() const noexcept;

 private:
  AdaCommConfig config_;
  double initial_loss_;
  double initial_lr_;
  int tau_prev_;
  int interval_ = 0;
  double next_checkpoint_;
};

bool should_defer_lr_decay(int current_tau, bool defer_enabled);

/// Closed-form minimiser over continuous tau of the error-runtime bound
///   2 (F1 - F_inf) / (lr T) (Y + D / tau) + lr L C / m + lr^2 L^2 C (tau - 1)
/// namely sqrt(2 (F1 - F_inf) D / (lr^3 L^2 C T)). Throws unless every input
/// is positive and F1 > F_inf.
double optimal_tau(double initial_loss, double loss_floor, double comm_delay,
                   double lr, double smoothness, double variance,
                   double horizon);

}  // namespace adacomm
