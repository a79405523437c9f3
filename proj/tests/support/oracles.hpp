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

// Reference computations written independently of the library code paths
// they check. They share only the objective's gradient oracle and the RNG
// substream contract.

#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "adacomm/delay.hpp"
#include "adacomm/engine.hpp"
#include "adacomm/objectives.hpp"
#include "adacomm/rng.hpp"

namespace adacomm::testing {

inline double harmonic(int m) {
  double h = 0.0;
  for (int i = 1; i <= m; ++i) h += 1.0 / i;
  return h;
}

/// Fully synchronous mini-batch SGD written as one straight loop:
///   x_{k+1} = x_k - lr * (1/m) sum_i g_i(x_k)
/// with worker i's gradient drawn from substream (seed, worker, {i, k}).
/// Wall-clock is k (y + D) for constant compute time y.
inline std::vector<TraceRecord> sync_sgd_oracle(const Objective& obj,
                                                ModelVector x, int workers,
                                                double lr, std::size_t batch,
                                                std::uint64_t seed,
                                                long long steps, double y,
                                                double d) {
  std::vector<TraceRecord> out;
  const std::size_t dim = x.size();
  double wall = 0.0;
  for (long long k = 0; k < steps; ++k) {
    std::vector<double> sum(dim, 0.0);
    for (int i = 0; i < workers; ++i) {
      RngStream rng = RngStream::substream(
          seed, StreamTag::kWorker,
          {static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(k)});
      const ModelVector g = obj.stochastic_gradient(x, batch, rng);
      for (std::size_t j = 0; j < dim; ++j) sum[j] += g[j];
    }
    for (std::size_t j = 0; j < dim; ++j) {
      x[j] = x[j] - lr * (sum[j] / workers);
    }
    wall += y + d;
    TraceRecord r;
    r.wall_clock = wall;
    r.iteration = k + 1;
    r.round = k + 1;
    r.tau = 1;
    r.lr = lr;
    r.train_loss = obj.evaluate_loss(x);
    r.grad_norm_sq = obj.full_gradient(x).squared_norm();
    out.push_back(r);
  }
  return out;
}

/// Central differences with step 1e-6 (1 + |x_i|).
inline ModelVector finite_difference_gradient(const Objective& obj,
                                              const ModelVector& x) {
  ModelVector g(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double h = 1e-6 * (1.0 + std::abs(x[i]));
    ModelVector plus = x;
    ModelVector minus = x;
    plus[i] += h;
    minus[i] -= h;
    g[i] = (obj.evaluate_loss(plus) - obj.evaluate_loss(minus)) / (2.0 * h);
  }
  return g;
}

/// Error-runtime bound evaluated term by term, for brute-force searches.
inline double bound_oracle(double f1, double finf, double lr, double l,
                           double c, int m, double y, double d, double tau,
                           double t) {
  const double optimisation = 2.0 * (f1 - finf) / (lr * t) * (y + d / tau);
  const double noise = lr * l * c / m;
  const double local = lr * lr * l * l * c * (tau - 1.0);
  return optimisation + noise + local;
}

/// Communication-bound scenario on the quadratic (d=10, M=30, C=1): four
/// workers at lr 0.05, compute time 1 and delay 4 per round, 2000 s budget.
struct Scenario {
  NoisyQuadratic objective{10, NoiseParams{30.0, 1.0}};
  DelayModel delay{ConstantTime{1.0}, 4.0, ConstantScaling{}};

  TrainConfig config(int tau, std::uint64_t seed) const {
    TrainConfig c;
    c.workers = 4;
    c.batch_size = 1;
    c.lr.base_lr = 0.05;
    c.schedule = FixedPeriod{tau};
    c.stop.max_seconds = 2000.0;
    c.seed = seed;
    return c;
  }
};

}  // namespace adacomm::testing
