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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "adacomm/engine.hpp"
#include "adacomm/tools/config.hpp"

namespace adacomm::tools {

struct SweepRow {
  nlohmann::json value;
  /// Config of this child; empty when patching or validation failed.
  std::optional<ExperimentConfig> config;
  RunTrace trace;
  std::optional<double> final_loss;
  std::optional<double> plateau_loss;
  std::vector<std::optional<double>> time_to_target;
  bool diverged = false;
  /// Non-empty when the child failed before or during its run.
  std::string error;
};

struct SweepResult {
  std::string parameter;
  std::vector<double> targets;
  std::vector<SweepRow> rows;
};

/// Config for spec.values[index]: the base document with the
/// swept field replaced and, for the per-run policy, seed + index.
ExperimentConfig sweep_child_config(const ExperimentConfig& base,
                                    const SweepSpec& spec, std::size_t index);

/// One run per value, run concurrently on up to max_parallel threads
/// (0 = hardware concurrency). A failed child is recorded in its row and the
/// rest carry on.
SweepResult run_sweep(const ExperimentConfig& base, const SweepSpec& spec,
                      unsigned max_parallel = 0);

/// value,final_loss,plateau_loss,time_to_target_<t>...,diverged,error
/// Unreached targets and missing losses are empty cells.
void write_sweep_summary(std::ostream& out, const SweepResult& result);

}  // namespace adacomm::tools
