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

#include <span>
#include <vector>

#include "adacomm/delay.hpp"
#include "adacomm/engine.hpp"
#include "adacomm/objectives.hpp"

namespace adacomm {

struct TauSearchEntry {
  int tau = 1;
  double final_loss = 0.0;
  bool diverged = false;
};

struct TauSearchResult {
  int best_tau = 1;
  std::vector<TauSearchEntry> entries;
};

/// Picks the initial communication period by running a short fixed-tau
/// simulation for each candidate with `budget_seconds` of simulated
/// wall-clock and keeping the lowest final averaged-model loss. Ties go to
/// the smaller tau. A run too short to complete a round scores F(x_1).
///
/// Everything in `base` except the schedule and stop criteria is reused,
/// including the seed. Throws if the list is empty, the budget is not
/// positive, or every candidate diverges.
TauSearchResult grid_search_tau0(std::span<const int> candidates,
                                 double budget_seconds,
                                 const TrainConfig& base,
                                 const Objective& objective,
                                 const DelayModel& delay);

}  // namespace adacomm
