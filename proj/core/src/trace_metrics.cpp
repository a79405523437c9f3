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

#include "adacomm/trace_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace adacomm {

std::optional<double> time_to_target(const RunTrace& trace, double target) {
  for (const auto& r : trace.records) {
    if (r.train_loss <= target) return r.wall_clock;
  }
  return std::nullopt;
}

double plateau_loss(const RunTrace& trace, double start_fraction,
                    std::optional<double> horizon) {
  if (trace.records.empty()) {
    throw std::invalid_argument("plateau_loss: empty trace");
  }
  const double end = horizon.value_or(trace.records.back().wall_clock);
  const double start = start_fraction * end;
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& r : trace.records) {
    if (r.wall_clock >= start) {
      sum += r.train_loss;
      ++n;
    }
  }
  if (n == 0) throw std::invalid_argument("plateau_loss: empty window");
  return sum / static_cast<double>(n);
}

std::vector<double> loss_on_grid(const RunTrace& trace, double step,
                                 double horizon) {
  if (!(step > 0.0) || !(horizon >= step)) {
    throw std::invalid_argument("loss_on_grid: need 0 < step <= horizon");
  }
  const auto n = static_cast<std::size_t>(std::floor(horizon / step + 1e-9));
  std::vector<double> out(n);
  std::size_t j = 0;
  double current = trace.initial_loss;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = step * static_cast<double>(i + 1);
    while (j < trace.records.size() && trace.records[j].wall_clock <= t) {
      current = trace.records[j].train_loss;
      ++j;
    }
    out[i] = current;
  }
  return out;
}

std::vector<double> centered_mean(std::span<const double> values,
                                  std::size_t half_width) {
  // Prefix sums keep this linear in the series length.
  std::vector<double> prefix(values.size() + 1, 0.0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    prefix[i + 1] = prefix[i] + values[i];
  }
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::size_t lo = i >= half_width ? i - half_width : 0;
    const std::size_t hi = std::min(values.size(), i + half_width + 1);
    out[i] = (prefix[hi] - prefix[lo]) / static_cast<double>(hi - lo);
  }
  return out;
}

}  // namespace adacomm
