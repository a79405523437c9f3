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

#include "adacomm/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace adacomm {

namespace {

void require_tau(double tau) {
  if (!(tau >= 1.0)) throw std::invalid_argument("tau must be >= 1");
}

void require_lr(double lr) {
  if (!(lr > 0.0)) throw std::invalid_argument("lr must be > 0");
}

std::vector<double> parse_numbers(std::string_view body) {
  std::vector<double> out;
  while (!body.empty()) {
    const auto comma = body.find(',');
    std::string token(body.substr(0, comma));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != token.size()) {
      throw std::invalid_argument("malformed number '" + token + "'");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
    if (body.empty()) throw std::invalid_argument("trailing comma");
  }
  return out;
}

// Exponent s such that lr^a tau^b ~ (r+1)^(-s).
double summand_exponent(const PowerRate& lr, const RateDescriptor& tau,
                        int lr_power, int tau_power) {
  double tau_exponent = 0.0;
  if (const auto* p = std::get_if<PowerRate>(&tau)) tau_exponent = p->exponent;
  // Bounded tau is squeezed between two constants, so by comparison it
  // behaves like exponent 0.
  return lr_power * lr.exponent + tau_power * tau_exponent;
}

SeriesCondition make_condition(std::string name, double exponent,
                               bool required_divergent) {
  SeriesCondition c;
  c.name = std::move(name);
  c.exponent = exponent;
  c.series_diverges = exponent <= 1.0;
  c.required_divergent = required_divergent;
  c.holds = c.series_diverges == required_divergent;
  return c;
}

bool tau_is_constant(const RateDescriptor& tau) {
  if (const auto* p = std::get_if<PowerRate>(&tau)) return p->exponent == 0.0;
  const auto& b = std::get<BoundedRate>(tau);
  return b.lower == b.upper;
}

}  // namespace

void BoundParams::validate() const {
  if (!(initial_loss > loss_floor)) {
    throw std::invalid_argument("bound params: F1 must exceed F_inf");
  }
  if (!(smoothness >= 0.0) || !(variance >= 0.0) || !(variance_slope >= 0.0)) {
    throw std::invalid_argument("bound params: L, C, M must be >= 0");
  }
  if (workers < 1) throw std::invalid_argument("bound params: m must be >= 1");
  if (!(compute_time > 0.0)) {
    throw std::invalid_argument("bound params: Y must be > 0");
  }
  if (!(comm_delay >= 0.0)) {
    throw std::invalid_argument("bound params: D must be >= 0");
  }
}

double error_floor(const BoundParams& p, double lr, double tau) {
  p.validate();
  require_lr(lr);
  require_tau(tau);
  const double lc = lr * p.smoothness * p.variance;
  return lc / p.workers +
         lr * lr * p.smoothness * p.smoothness * p.variance * (tau - 1.0);
}

double error_runtime_bound(const BoundParams& p, double lr, double tau,
                           double horizon) {
  if (!(horizon > 0.0)) {
    throw std::invalid_argument("error_runtime_bound: T must be > 0");
  }
  const double floor = error_floor(p, lr, tau);
  return 2.0 * (p.initial_loss - p.loss_floor) / (lr * horizon) *
             (p.compute_time + p.comm_delay / tau) +
         floor;
}

std::optional<double> bound_crossover(const BoundParams& p, double lr,
                                      double tau_a, double tau_b, double t_lo,
                                      double t_hi, double tol) {
  if (!(t_lo > 0.0) || !(t_hi > t_lo)) {
    throw std::invalid_argument("bound_crossover: need 0 < t_lo < t_hi");
  }
  auto diff = [&](double t) {
    return error_runtime_bound(p, lr, tau_a, t) -
           error_runtime_bound(p, lr, tau_b, t);
  };
  double lo = t_lo;
  double hi = t_hi;
  double f_lo = diff(lo);
  const double f_hi = diff(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) return std::nullopt;
  while ((hi - lo) > tol * hi) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = diff(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double simplified_fixed_lr_bound(const BoundParams& p, double lr,
                                 std::span<const int> taus, long long K) {
  p.validate();
  require_lr(lr);
  if (taus.empty()) {
    throw std::invalid_argument("simplified_fixed_lr_bound: empty tau sequence");
  }
  long long sum = 0;
  double sum_sq = 0.0;
  for (int t : taus) {
    if (t < 1) throw std::invalid_argument("tau must be >= 1");
    sum += t;
    sum_sq += static_cast<double>(t) * t;
  }
  if (sum != K) {
    throw std::invalid_argument(
        "simplified_fixed_lr_bound: K must equal the sum of the tau sequence");
  }
  const double k = static_cast<double>(K);
  const double l = p.smoothness;
  return 2.0 * (p.initial_loss - p.loss_floor) / (lr * k) +
         lr * l * p.variance / p.workers +
         lr * lr * l * l * p.variance * (sum_sq / k - 1.0);
}

RateDescriptor parse_rate(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("malformed rate descriptor '" +
                                std::string(text) + "'");
  }
  const std::string_view kind = text.substr(0, colon);
  std::vector<double> args;
  try {
    args = parse_numbers(text.substr(colon + 1));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("malformed rate descriptor '" +
                                std::string(text) + "': " + e.what());
  }
  if (kind == "const" && args.size() == 1) return PowerRate{args[0], 0.0};
  if (kind == "power" && args.size() == 2) return PowerRate{args[0], args[1]};
  if (kind == "bounded" && args.size() == 2) {
    return BoundedRate{args[0], args[1]};
  }
  throw std::invalid_argument("malformed rate descriptor '" +
                              std::string(text) + "'");
}

std::string describe(const RateDescriptor& rate) {
  std::ostringstream out;
  if (const auto* p = std::get_if<PowerRate>(&rate)) {
    if (p->exponent == 0.0) {
      out << p->scale;
    } else {
      out << p->scale << "/(r+1)^" << p->exponent;
    }
  } else {
    const auto& b = std::get<BoundedRate>(rate);
    out << "bounded[" << b.lower << "," << b.upper << "]";
  }
  return out.str();
}

bool ConditionsReport::pass() const noexcept {
  return std::all_of(adaptive.begin(), adaptive.end(),
                     [](const SeriesCondition& c) { return c.holds; });
}

ConditionsReport check_adaptive_conditions(const RateDescriptor& lr,
                                           const RateDescriptor& tau) {
  const auto* lr_power = std::get_if<PowerRate>(&lr);
  if (lr_power == nullptr) {
    throw std::invalid_argument(
        "malformed rate descriptor: lr must be const or power");
  }
  if (!(lr_power->scale > 0.0)) {
    throw std::invalid_argument("malformed rate descriptor: lr scale must be > 0");
  }
  if (const auto* p = std::get_if<PowerRate>(&tau)) {
    if (!(p->scale > 0.0)) {
      throw std::invalid_argument(
          "malformed rate descriptor: tau scale must be > 0");
    }
  } else {
    const auto& b = std::get<BoundedRate>(tau);
    if (!(b.lower >= 1.0) || !(b.upper >= b.lower) || !std::isfinite(b.upper)) {
      throw std::invalid_argument(
          "malformed rate descriptor: bounded tau needs 1 <= lo <= hi < inf");
    }
  }

  ConditionsReport report;
  report.adaptive = {
      make_condition("sum lr*tau = inf", summand_exponent(*lr_power, tau, 1, 1),
                     true),
      make_condition("sum lr^2*tau < inf",
                     summand_exponent(*lr_power, tau, 2, 1), false),
      make_condition("sum lr^3*tau^2 < inf",
                     summand_exponent(*lr_power, tau, 3, 2), false),
  };
  if (tau_is_constant(tau)) {
    report.constant_tau_reduction = std::array<SeriesCondition, 2>{
        make_condition("sum lr = inf", lr_power->exponent, true),
        make_condition("sum lr^2 < inf", 2.0 * lr_power->exponent, false),
    };
  }
  return report;
}

PartialSums adaptive_partial_sums(std::span<const double> lr,
                                  std::span<const double> tau) {
  if (lr.empty() || lr.size() != tau.size()) {
    throw std::invalid_argument(
        "adaptive_partial_sums: sequences must be nonempty and equal length");
  }
  PartialSums s;
  for (std::size_t r = 0; r < lr.size(); ++r) {
    if (!(lr[r] > 0.0) || !(tau[r] > 0.0)) {
      throw std::invalid_argument("adaptive_partial_sums: values must be > 0");
    }
    s.lr_tau += lr[r] * tau[r];
    s.lr2_tau += lr[r] * lr[r] * tau[r];
    s.lr3_tau2 += lr[r] * lr[r] * lr[r] * tau[r] * tau[r];
  }
  return s;
}

double weighted_grad_stat(std::span<const double> grad_norm_sq,
                          std::span<const double> lr,
                          std::span<const double> tau) {
  if (grad_norm_sq.empty()) {
    throw std::invalid_argument("weighted_grad_stat: empty trace");
  }
  if (lr.size() != grad_norm_sq.size() || tau.size() != grad_norm_sq.size()) {
    throw std::invalid_argument("weighted_grad_stat: length mismatch");
  }
  double num = 0.0;
  double den = 0.0;
  for (std::size_t r = 0; r < grad_norm_sq.size(); ++r) {
    const double w = lr[r] * tau[r];
    num += w * grad_norm_sq[r];
    den += w;
  }
  return num / den;
}

double weighted_grad_stat(const RunTrace& trace, std::size_t first,
                          std::size_t last) {
  last = std::min(last, trace.records.size());
  if (first >= last) {
    throw std::invalid_argument("weighted_grad_stat: empty trace");
  }
  std::vector<double> g, lr, tau;
  for (std::size_t i = first; i < last; ++i) {
    const auto& r = trace.records[i];
    g.push_back(r.grad_norm_sq);
    lr.push_back(r.lr);
    tau.push_back(r.tau);
  }
  return weighted_grad_stat(g, lr, tau);
}

double dense_weighted_grad_stat(const RunTrace& trace) {
  if (trace.dense.empty() || trace.records.empty()) {
    throw std::invalid_argument(
        "dense_weighted_grad_stat: trace has no dense records");
  }
  double num = 0.0;
  double den = 0.0;
  for (const auto& d : trace.dense) {
    const auto idx = static_cast<std::size_t>(d.round - 1);
    if (idx >= trace.records.size()) continue;  // unfinished final round
    num += trace.records[idx].lr * d.grad_norm_sq;
  }
  for (const auto& r : trace.records) den += r.lr * r.tau;
  return num / den;
}

}  // namespace adacomm
