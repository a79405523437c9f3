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

#include <optional>
#include <span>
#include <vector>

#include "adacomm/engine.hpp"

namespace adacomm {

/// First synchronisation wall-clock at which train_loss <= target.
std::optional<double> time_to_target(const RunTrace& trace, double target);

/// Mean train_loss over records with wall_clock >= start_fraction * horizon.
/// horizon defaults to the last record's wall-clock. Throws if no record
/// falls in the window.
double plateau_loss(const RunTrace& trace, double start_fraction = 0.5,
                    std::optional<double> horizon = std::nullopt);

/// Loss held piecewise-constant between synchronisations and sampled at
/// step, 2 step, ... up to horizon. Before the first record the curve is
/// the initial loss.
std::vector<double> loss_on_grid(const RunTrace& trace, double step,
                                 double horizon);

/// Centered moving average over [i - half_width, i + half_width], truncated
/// at both ends.
std::vector<double> centered_mean(std::span<const double> values,
                                  std::size_t half_width);

}  // namespace adacomm
