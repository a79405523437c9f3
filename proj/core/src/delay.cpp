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

#include "adacomm/delay.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace adacomm {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive_workers(int workers) {
  if (workers < 1) {
    throw std::invalid_argument("worker count must be >= 1");
  }
}

void require_positive_tau(int tau) {
  if (tau < 1) {
    throw std::invalid_argument("communication period must be >= 1");
  }
}

std::vector<double> draw_iteration_times(const DelayModel& model, int workers,
                                         int tau, std::size_t n_samples,
                                         std::uint64_t seed) {
  std::vector<double> out(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    RngStream rng = RngStream::substream(seed, StreamTag::kSample, {i});
    out[i] = sample_round_time(model, workers, tau, rng) / tau;
  }
  return out;
}

}  // namespace

DelayModel::DelayModel(ComputeTimeDist compute, double base_delay,
                       CommScaling scaling)
    : compute_(std::move(compute)),
      base_delay_(base_delay),
      scaling_(std::move(scaling)) {
  std::visit(Overloaded{
                 [](const ConstantTime& c) {
                   if (!(c.value > 0.0) || !std::isfinite(c.value))
                     throw std::invalid_argument("compute time must be > 0");
                 },
                 [](const ExponentialTime& e) {
                   if (!(e.mean > 0.0) || !std::isfinite(e.mean))
                     throw std::invalid_argument("compute mean must be > 0");
                 },
                 [](const ShiftedExponentialTime& s) {
                   if (!(s.shift >= 0.0) || !(s.mean > 0.0) ||
                       !std::isfinite(s.shift) || !std::isfinite(s.mean))
                     throw std::invalid_argument(
                         "shifted exponential needs shift >= 0, mean > 0");
                 },
             },
             compute_);
  if (!(base_delay_ >= 0.0) || !std::isfinite(base_delay_)) {
    throw std::invalid_argument("D0 must be finite and >= 0");
  }
  if (const auto* t = std::get_if<TableScaling>(&scaling_)) {
    for (const auto& [m, s] : t->table) {
      if (m < 1 || !(s >= 0.0)) {
        throw std::invalid_argument("scaling table needs m >= 1 and s(m) >= 0");
      }
    }
  }
}

bool DelayModel::deterministic() const noexcept {
  return std::holds_alternative<ConstantTime>(compute_);
}

double DelayModel::mean_compute_time() const noexcept {
  return std::visit(
      Overloaded{
          [](const ConstantTime& c) { return c.value; },
          [](const ExponentialTime& e) { return e.mean; },
          [](const ShiftedExponentialTime& s) { return s.shift + s.mean; },
      },
      compute_);
}

double DelayModel::sample_compute_time(RngStream& rng) const {
  return std::visit(
      Overloaded{
          [](const ConstantTime& c) { return c.value; },
          [&rng](const ExponentialTime& e) {
            return std::exponential_distribution<double>(1.0 / e.mean)(rng);
          },
          [&rng](const ShiftedExponentialTime& s) {
            return s.shift +
                   std::exponential_distribution<double>(1.0 / s.mean)(rng);
          },
      },
      compute_);
}

double scaling_factor(const CommScaling& scaling, int workers) {
  require_positive_workers(workers);
  return std::visit(
      Overloaded{
          [](const ConstantScaling&) { return 1.0; },
          [workers](const Log2TreeScaling&) {
            return 2.0 * std::log2(static_cast<double>(workers));
          },
          [workers](const LinearScaling&) {
            return static_cast<double>(workers);
          },
          [workers](const TableScaling& t) {
            auto it = t.table.find(workers);
            if (it == t.table.end()) {
              throw std::invalid_argument("scaling table has no entry for m=" +
                                          std::to_string(workers));
            }
            return it->second;
          },
      },
      scaling);
}

double comm_delay(const DelayModel& model, int workers) {
  return model.base_delay() * scaling_factor(model.scaling(), workers);
}

double sample_round_time(const DelayModel& model, int workers, int tau,
                         RngStream& rng) {
  require_positive_workers(workers);
  require_positive_tau(tau);
  const double d = comm_delay(model, workers);
  if (const auto* c = std::get_if<ConstantTime>(&model.compute())) {
    return tau * c->value + d;
  }
  double slowest = 0.0;
  for (int i = 0; i < workers; ++i) {
    double local = 0.0;
    for (int k = 0; k < tau; ++k) local += model.sample_compute_time(rng);
    slowest = std::max(slowest, local);
  }
  return slowest + d;
}

RuntimeStats expected_iteration_time(const DelayModel& model, int workers,
                                     int tau, std::size_t n_samples,
                                     std::uint64_t seed) {
  require_positive_workers(workers);
  require_positive_tau(tau);
  RuntimeStats stats;
  stats.workers = workers;
  stats.tau = tau;
  stats.seed = seed;

  if (model.deterministic()) {
    const double y = std::get<ConstantTime>(model.compute()).value;
    stats.mean_round_time = tau * y + comm_delay(model, workers);
    stats.mean_iteration_time = y + comm_delay(model, workers) / tau;
    return stats;
  }
  if (n_samples == 0) {
    throw std::invalid_argument("expected_iteration_time: n_samples must be >= 1");
  }
  EmpiricalCdf cdf(draw_iteration_times(model, workers, tau, n_samples, seed));
  stats.n_samples = n_samples;
  stats.mean_iteration_time = cdf.mean();
  stats.mean_round_time = cdf.mean() * tau;
  stats.iteration_stderr = cdf.stderr_of_mean();
  stats.samples = cdf.sorted();
  return stats;
}

double speedup_ratio(double alpha, int tau) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("speedup_ratio: alpha must be finite and >= 0");
  }
  require_positive_tau(tau);
  return (1.0 + alpha) / (1.0 + alpha / tau);
}

double harmonic_number(int m) {
  require_positive_workers(m);
  double h = 0.0;
  for (int i = m; i >= 1; --i) h += 1.0 / i;
  return h;
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples)
    : sorted_(std::move(samples)) {
  if (sorted_.empty()) {
    throw std::invalid_argument("EmpiricalCdf: no samples");
  }
  std::sort(sorted_.begin(), sorted_.end());
  const double n = static_cast<double>(sorted_.size());
  mean_ = std::accumulate(sorted_.begin(), sorted_.end(), 0.0) / n;
  if (sorted_.size() > 1) {
    double ss = 0.0;
    for (double v : sorted_) ss += (v - mean_) * (v - mean_);
    variance_ = ss / (n - 1.0);
    stderr_ = std::sqrt(variance_ / n);
  }
}

double EmpiricalCdf::operator()(double x) const noexcept {
  auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) /
         static_cast<double>(sorted_.size());
}

double EmpiricalCdf::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("quantile: p must be in [0, 1]");
  }
  const double h = p * static_cast<double>(sorted_.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted_.size() - 1);
  return sorted_[lo] + (h - static_cast<double>(lo)) * (sorted_[hi] - sorted_[lo]);
}

EmpiricalCdf runtime_tail(const DelayModel& model, int workers, int tau,
                          std::size_t n_samples, std::uint64_t seed) {
  if (n_samples < 1000) {
    throw std::invalid_argument("runtime_tail: n_samples must be >= 1000");
  }
  return EmpiricalCdf(draw_iteration_times(model, workers, tau, n_samples, seed));
}

}  // namespace adacomm
