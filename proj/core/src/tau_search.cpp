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

#include "adacomm/tau_search.hpp"

#include <algorithm>
#include <stdexcept>

namespace adacomm {

TauSearchResult grid_search_tau0(std::span<const int> candidates,
                                 double budget_seconds,
                                 const TrainConfig& base,
                                 const Objective& objective,
                                 const DelayModel& delay) {
  if (candidates.empty()) {
    throw std::invalid_argument("grid_search_tau0: no candidates");
  }
  if (!(budget_seconds > 0.0)) {
    throw std::invalid_argument("grid_search_tau0: budget must be > 0");
  }

  std::vector<int> sorted(candidates.begin(), candidates.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  TauSearchResult result;
  bool found = false;
  double best_loss = 0.0;
  for (int tau : sorted) {
    TrainConfig cfg = base;
    cfg.schedule = FixedPeriod{tau};
    cfg.stop = StopCriteria{budget_seconds, std::nullopt};
    const RunTrace trace = run_pasgd(cfg, objective, delay);

    TauSearchEntry entry;
    entry.tau = tau;
    entry.diverged = trace.diverged;
    entry.final_loss = trace.records.empty() ? trace.initial_loss
                                             : trace.records.back().train_loss;
    result.entries.push_back(entry);
    if (entry.diverged) continue;
    if (!found || entry.final_loss < best_loss) {
      found = true;
      best_loss = entry.final_loss;
      result.best_tau = tau;
    }
  }
  if (!found) {
    throw std::runtime_error("grid_search_tau0: every candidate diverged");
  }
  return result;
}

}  // namespace adacomm
