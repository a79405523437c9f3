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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "adacomm/bounds.hpp"
#include "adacomm/tools/config.hpp"

namespace adacomm::tools {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitDiverged = 3;
inline constexpr int kExitInternalError = 4;

struct SimulateOptions {
  std::filesystem::path config;
  std::filesystem::path out;
  std::optional<std::uint64_t> seed;
};
/// Writes the trace CSV, an events CSV for AdaComm schedules
/// ("<stem>.events.csv") and a manifest for each.
int run_simulate(const SimulateOptions& opts, std::ostream& log);

struct SweepOptions {
  std::filesystem::path config;
  std::filesystem::path out;
  std::optional<std::uint64_t> seed;
  unsigned jobs = 0;
};
/// Summary CSV at out, one trace per child at "<stem>.run<i>.csv".
int run_sweep_command(const SweepOptions& opts, std::ostream& log);

/// Delay model and worker counts for runtime/speedup, from a config file or
/// from explicit flags.
struct DelayOptions {
  std::optional<std::filesystem::path> config;
  std::string dist = "exponential";
  double compute_mean = 1.0;  // value for constant, mean otherwise
  double shift = 0.0;
  double base_delay = 1.0;
  std::string scaling = "constant";
  std::vector<int> workers;
};

struct RuntimeOptions {
  DelayOptions delay;
  std::vector<int> taus{1};
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  std::filesystem::path out;
  bool speedup = false;
};
int run_runtime(const RuntimeOptions& opts, std::ostream& log);

/// Bound constants: taken from a config when given, then overridden by any
/// explicit value.
struct BoundOptions {
  std::optional<std::filesystem::path> config;
  std::optional<double> initial_loss, loss_floor, smoothness, variance, lr,
      compute_time, comm_delay;
  std::optional<int> workers;
};

struct ResolvedBound {
  BoundParams params;
  double lr = 0.0;
  /// Y or D is stochastic and was replaced by its mean.
  bool approximate = false;
};
ResolvedBound resolve_bound_params(const BoundOptions& opts);

struct BoundCurveOptions {
  BoundOptions bound;
  std::vector<int> taus{1, 10};
  double t_min = 1.0;
  double t_max = 1.0e4;
  int points = 200;
  std::filesystem::path out;
};
/// Long-format CSV: T,tau,bound,floor on a log-spaced T grid.
int run_bound(const BoundCurveOptions& opts, std::ostream& log);

struct OptTauOptions {
  BoundOptions bound;
  double horizon = 0.0;
  std::optional<std::filesystem::path> out;
};
int run_opt_tau(const OptTauOptions& opts, std::ostream& log);

struct ConditionsOptions {
  std::string lr;
  std::string tau;
};
int run_check_conditions(const ConditionsOptions& opts, std::ostream& log);

struct GridOptions {
  std::filesystem::path config;
  std::vector<int> candidates;
  std::optional<double> budget;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out;
};
int run_grid_tau0(const GridOptions& opts, std::ostream& log);

}  // namespace adacomm::tools
