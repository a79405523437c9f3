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

#include <benchmark/benchmark.h>

#include "adacomm/delay.hpp"
#include "adacomm/engine.hpp"
#include "adacomm/objectives.hpp"

namespace {

using namespace adacomm;

void BM_SampleRoundTime(benchmark::State& state) {
  const int workers = static_cast<int>(state.range(0));
  const int tau = static_cast<int>(state.range(1));
  const DelayModel dm(ExponentialTime{1.0}, 1.0, Log2TreeScaling{});
  RngStream rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_round_time(dm, workers, tau, rng));
  }
  state.SetItemsProcessed(state.iterations() * workers * tau);
}
BENCHMARK(BM_SampleRoundTime)->Args({16, 1})->Args({16, 10})->Args({128, 10});

void BM_StochasticGradient(benchmark::State& state) {
  ObjectiveSpec spec;
  spec.kind = static_cast<ObjectiveKind>(state.range(0));
  spec.dimension = 32;
  spec.noise = NoiseParams{1.0, 1.0};
  spec.n_points = 1024;
  const auto obj = make_objective(spec);
  const ModelVector x(obj->dimension(), 0.1);
  RngStream rng(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(obj->stochastic_gradient(x, 16, rng));
  }
  state.SetLabel(std::string(to_string(spec.kind)));
}
BENCHMARK(BM_StochasticGradient)->DenseRange(0, 2);

void BM_RunPasgd(benchmark::State& state) {
  const NoisyQuadratic obj(10, NoiseParams{30.0, 1.0});
  const DelayModel dm(ConstantTime{1.0}, 4.0, ConstantScaling{});
  TrainConfig cfg;
  cfg.workers = 4;
  cfg.lr.base_lr = 0.05;
  cfg.schedule = FixedPeriod{static_cast<int>(state.range(0))};
  cfg.stop.max_iterations = 2000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_pasgd(cfg, obj, dm));
  }
  state.SetItemsProcessed(state.iterations() * 2000 * cfg.workers);
}
BENCHMARK(BM_RunPasgd)->Arg(1)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
