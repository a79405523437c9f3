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

#include "adacomm/controller.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace adacomm {

std::string_view to_string(AdaCommMode mode) noexcept {
  switch (mode) {
    case AdaCommMode::kBasic:
      return "basic";
    case AdaCommMode::kLrCoupledExact:
      return "lr_coupled_exact";
    case AdaCommMode::kLrCoupledApprox:
      return "lr_coupled_approx";
  }
  return "unknown";
}

std::optional<AdaCommMode> parse_adacomm_mode(std::string_view name) {
  if (name == "basic") return AdaCommMode::kBasic;
  if (name == "lr_coupled_exact") return AdaCommMode::kLrCoupledExact;
  if (name == "lr_coupled_approx") return AdaCommMode::kLrCoupledApprox;
  return std::nullopt;
}

std::string_view to_string(PeriodBranch branch) noexcept {
  return branch == PeriodBranch::kFormula ? "formula" : "gamma";
}

void AdaCommConfig::validate() const {
  if (!(checkpoint_interval > 0.0) || !std::isfinite(checkpoint_interval)) {
    throw std::invalid_argument("T0 must be > 0");
  }
  if (initial_period < 1) {
    throw std::invalid_argument("tau0 must be >= 1");
  }
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("gamma must be in (0,1)");
  }
  if (slack < 0) {
    throw std::invalid_argument("slack must be >= 0");
  }
  if (max_period < 1) {
    throw std::invalid_argument("tau_max must be >= 1");
  }
  if (initial_period > max_period) {
    throw std::invalid_argument("tau0 must not exceed tau_max");
  }
}

AdaCommController::AdaCommController(const AdaCommConfig& config,
                                     double initial_loss, double initial_lr)
    : config_(config),
      initial_loss_(initial_loss),
      initial_lr_(initial_lr),
      tau_prev_(config.initial_period),
      next_checkpoint_(config.checkpoint_interval) {
  config_.validate();
  if (!(initial_loss > 0.0) || !std::isfinite(initial_loss)) {
    throw std::invalid_argument("AdaComm: initial loss must be > 0");
  }
  if (!(initial_lr > 0.0)) {
    throw std::invalid_argument("AdaComm: initial learning rate must be > 0");
  }
}

PeriodDecision AdaCommController::next_tau(double loss_now, double lr_now,
                                           double wall_clock) {
  if (!(loss_now > 0.0) || !std::isfinite(loss_now)) {
    throw std::invalid_argument("AdaComm: current loss must be > 0");
  }
  if (!(lr_now > 0.0)) {
    throw std::invalid_argument("AdaComm: current learning rate must be > 0");
  }

  PeriodDecision d;
  d.wall_clock = wall_clock;
  d.interval = ++interval_;
  d.loss_ratio = loss_now / initial_loss_;
  d.lr_ratio = initial_lr_ / lr_now;

  double ratio = d.loss_ratio;
  switch (config_.mode) {
    case AdaCommMode::kBasic:
      break;
    case AdaCommMode::kLrCoupledExact:
      ratio *= d.lr_ratio * d.lr_ratio * d.lr_ratio;
      break;
    case AdaCommMode::kLrCoupledApprox:
      ratio *= d.lr_ratio;
      break;
  }
  const double raw = std::ceil(std::sqrt(ratio) * config_.initial_period);
  // Only guards the int conversion; the tau_max cap applies to the output.
  d.candidate = static_cast<int>(std::min(raw, 1.0e9));

  int next;
  if (d.candidate + config_.slack < tau_prev_) {
    d.branch = PeriodBranch::kFormula;
    next = d.candidate;
  } else {
    d.branch = PeriodBranch::kGamma;
    next = static_cast<int>(std::floor(config_.gamma * tau_prev_ + 0.5));
  }
  next = std::clamp(next, 1, config_.max_period);
  d.period = next;
  tau_prev_ = next;

  while (next_checkpoint_ <= wall_clock) {
    next_checkpoint_ += config_.checkpoint_interval;
  }
  return d;
}

bool AdaCommController::should_defer_lr_decay() const noexcept {
  return adacomm::should_defer_lr_decay(tau_prev_, config_.defer_lr_decay);
}

bool should_defer_lr_decay(int current_tau, bool defer_enabled) {
  return defer_enabled && current_tau > 1;
}

double optimal_tau(double initial_loss, double loss_floor, double comm_delay,
                   double lr, double smoothness, double variance,
                   double horizon) {
  if (!(initial_loss > loss_floor)) {
    throw std::invalid_argument("optimal_tau: F1 must exceed F_inf");
  }
  if (!(comm_delay > 0.0) || !(lr > 0.0) || !(smoothness > 0.0) ||
      !(variance > 0.0) || !(horizon > 0.0)) {
    throw std::invalid_argument("optimal_tau: D, lr, L, C and T must be > 0");
  }
  return std::sqrt(2.0 * (initial_loss - loss_floor) * comm_delay /
                   (lr * lr * lr * smoothness * smoothness * variance * horizon));
}

}  // namespace adacomm
