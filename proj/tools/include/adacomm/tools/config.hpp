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

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "adacomm/delay.hpp"
#include "adacomm/engine.hpp"
#include "adacomm/objectives.hpp"

namespace adacomm::tools {

/// Schema or invariant violation. field() is a dotted path such as
/// "schedule.gamma", empty for whole-document problems.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message);
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct GridSearchSpec {
  std::vector<int> candidates;
  double budget_seconds = 0.0;
};

enum class SeedPolicy { kShared, kPerRun };

struct SweepSpec {
  std::string parameter;  // dotted path into the config document
  std::vector<nlohmann::json> values;
  SeedPolicy seed_policy = SeedPolicy::kShared;
  std::vector<double> targets;
};

struct ExperimentConfig {
  ObjectiveSpec objective;
  DelayModel delay{ConstantTime{1.0}, 0.0, ConstantScaling{}};
  TrainConfig train;
  /// Only with an adacomm schedule: pick tau_0 by a short fixed-tau search.
  std::optional<GridSearchSpec> tau0_grid;
  std::optional<SweepSpec> sweep;
};

ExperimentConfig parse_config(const std::filesystem::path& path);
ExperimentConfig parse_config_json(const nlohmann::json& doc);

/// The "delay" section of a config document.
nlohmann::json delay_to_json(const DelayModel& delay);

/// Fully defaulted document; parse_config_json(to_json(c)) reproduces c.
nlohmann::json to_json(const ExperimentConfig& config);

}  // namespace adacomm::tools
