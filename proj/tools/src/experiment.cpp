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

#include "adacomm/tools/experiment.hpp"

namespace adacomm::tools {

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const auto objective = make_objective(config.objective);
  ExperimentResult result;
  result.resolved = config.train;
  if (config.tau0_grid) {
    auto* ada = std::get_if<AdaCommConfig>(&result.resolved.schedule);
    if (ada != nullptr) {
      result.grid = grid_search_tau0(config.tau0_grid->candidates,
                                     config.tau0_grid->budget_seconds,
                                     config.train, *objective, config.delay);
      ada->initial_period = result.grid->best_tau;
    }
  }
  result.trace = run_pasgd(result.resolved, *objective, config.delay);
  return result;
}

}  // namespace adacomm::tools
