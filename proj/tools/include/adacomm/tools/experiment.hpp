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

#include <memory>
#include <optional>

#include "adacomm/engine.hpp"
#include "adacomm/tau_search.hpp"
#include "adacomm/tools/config.hpp"

namespace adacomm::tools {

struct ExperimentResult {
  RunTrace trace;
  /// Present when tau_0 was chosen by grid search.
  std::optional<TauSearchResult> grid;
  /// The train config actually run, with any searched tau_0 filled in.
  TrainConfig resolved;
};

/// Builds the objective and runs it, searching for tau_0 first when a grid is
/// configured.
ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace adacomm::tools
