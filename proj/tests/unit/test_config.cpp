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

#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "adacomm/tools/config.hpp"
#include "adacomm/tools/json_path.hpp"

namespace adacomm::tools {
namespace {

using nlohmann::json;

json minimal() {
  return json::parse(R"({
    "objective": {"kind": "noisy_quadratic", "dimension": 3},
    "train": {"lr": 0.1, "max_seconds": 50}
  })");
}

std::string error_of(const json& doc) {
  try {
    parse_config_json(doc);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

std::string field_of(const json& doc) {
  try {
    parse_config_json(doc);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<none>";
}

TEST(Config, MinimalDefaults) {
  const ExperimentConfig c = parse_config_json(minimal());
  EXPECT_EQ(c.objective.kind, ObjectiveKind::kNoisyQuadratic);
  EXPECT_EQ(c.objective.dimension, 3u);
  EXPECT_EQ(c.train.workers, 1);
  EXPECT_EQ(c.train.batch_size, 1u);
  EXPECT_EQ(c.train.seed, 1u);
  EXPECT_EQ(std::get<FixedPeriod>(c.train.schedule).tau, 1);
  EXPECT_TRUE(std::holds_alternative<NoMomentum>(c.train.momentum));
  EXPECT_EQ(c.delay.base_delay(), 0.0);
  EXPECT_FALSE(c.sweep.has_value());
  EXPECT_FALSE(c.tau0_grid.has_value());
}

TEST(Config, AdaCommDefaults) {
  json doc = minimal();
  doc["schedule"] = {{"type", "adacomm"}, {"T0", 10}};
  const auto c = parse_config_json(doc);
  const auto& a = std::get<AdaCommConfig>(c.train.schedule);
  EXPECT_EQ(a.checkpoint_interval, 10.0);
  EXPECT_EQ(a.initial_period, 1);
  EXPECT_EQ(a.gamma, 0.5);
  EXPECT_EQ(a.mode, AdaCommMode::kLrCoupledApprox);
  EXPECT_TRUE(a.defer_lr_decay);
  EXPECT_EQ(a.max_period, 100);
}

TEST(Config, GammaOutOfRangeNamesField) {
  json doc = minimal();
  doc["schedule"] = {{"type", "adacomm"}, {"T0", 10}, {"gamma", 1.5}};
  EXPECT_EQ(error_of(doc), "schedule.gamma: gamma must be in (0,1)");
}

TEST(Config, RejectsInvalidValues) {
  json doc = minimal();
  doc["schedule"] = {{"type", "adacomm"}, {"T0", 10}, {"tau0", 0}};
  EXPECT_EQ(field_of(doc), "schedule.tau0");
  doc["schedule"] = {{"type", "adacomm"}, {"T0", 0}};
  EXPECT_EQ(field_of(doc), "schedule.T0");
  doc["schedule"] = {{"type", "adacomm"}, {"T0", -5}};
  EXPECT_EQ(field_of(doc), "schedule.T0");
  doc["schedule"] = {{"type", "adacomm"}};
  EXPECT_EQ(field_of(doc), "schedule.T0");
  doc["schedule"] = {{"type", "fixed"}, {"tau", 0}};
  EXPECT_EQ(field_of(doc), "schedule.tau");
  doc["schedule"] = {{"type", "adacomm"}, {"T0", 10}, {"mode", "fast"}};
  EXPECT_EQ(field_of(doc), "schedule.mode");

  doc = minimal();
  doc["train"]["lr"] = -1;
  EXPECT_EQ(field_of(doc), "train.lr");
  doc = minimal();
  doc["train"]["workers"] = 2.5;
  EXPECT_EQ(field_of(doc), "train.workers");
  doc = minimal();
  doc["train"].erase("max_seconds");
  EXPECT_EQ(field_of(doc), "train");
  doc = minimal();
  doc["objective"]["kind"] = "resnet";
  EXPECT_EQ(field_of(doc), "objective.kind");
  doc = minimal();
  doc["delay"] = {{"compute", {{"dist", "pareto"}}}};
  EXPECT_EQ(field_of(doc), "delay.compute.dist");
  doc = minimal();
  doc.erase("train");
  EXPECT_EQ(field_of(doc), "train");
}

TEST(Config, UnknownKeysAreRejectedWithPath) {
  json doc = minimal();
  doc["objective"]["foo"] = 1;
  EXPECT_EQ(error_of(doc), "objective.foo: unknown key");
  doc = minimal();
  doc["train"]["momentum"] = {{"type", "local"}, {"beta", 0.5}, {"bta", 0.1}};
  EXPECT_EQ(field_of(doc), "train.momentum.bta");
  doc = minimal();
  doc["extra"] = true;
  EXPECT_EQ(field_of(doc), "extra");
}

TEST(Config, CrossFieldChecks) {
  json doc = minimal();
  doc["objective"] = {{"kind", "logistic"}, {"dimension", 3}, {"n_points", 10}};
  doc["train"]["batch_size"] = 11;
  EXPECT_EQ(field_of(doc), "train.batch_size");

  doc = minimal();
  doc["train"]["lr_decay"] = {{"milestones", {2}}, {"unit", "epochs"}};
  EXPECT_EQ(field_of(doc), "train.lr_decay.unit");

  doc = minimal();
  doc["train"]["workers"] = 8;
  doc["delay"] = {{"D0", 1}, {"scaling", {{"table", {{"4", 2.0}}}}}};
  EXPECT_EQ(field_of(doc), "delay.scaling.table");

  doc = minimal();
  doc["objective"] = {{"kind", "logistic"}, {"dimension", 3}};
  EXPECT_EQ(field_of(doc), "objective.n_points");
}

TEST(Config, SweepSection) {
  json doc = minimal();
  doc["sweep"] = {{"parameter", "train.lrr"}, {"values", {0.1, 0.2}}};
  EXPECT_EQ(field_of(doc), "sweep.parameter");
  doc["sweep"] = {{"parameter", "train.lr"}, {"values", json::array()}};
  EXPECT_EQ(field_of(doc), "sweep.values");
  doc["sweep"] = {{"parameter", "train.lr"}, {"values", {0.1, 0.2}},
                  {"seed_policy", "per_run"}, {"targets", {0.5}}};
  const auto c = parse_config_json(doc);
  ASSERT_TRUE(c.sweep.has_value());
  EXPECT_EQ(c.sweep->parameter, "train.lr");
  EXPECT_EQ(c.sweep->seed_policy, SeedPolicy::kPerRun);
  EXPECT_EQ(c.sweep->values.size(), 2u);
  // Defaulted fields can be swept even when absent from the input.
  doc["sweep"] = {{"parameter", "train.workers"}, {"values", {1, 2}}};
  EXPECT_NO_THROW(parse_config_json(doc));
}

TEST(Config, InvalidJsonFile) {
  const auto path = std::filesystem::temp_directory_path() / "adacomm_bad_config.json";
  {
    std::ofstream out(path);
    out << "{\"objective\": ";
  }
  try {
    parse_config(path);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("invalid JSON"), std::string::npos);
  }
  std::filesystem::remove(path);
  EXPECT_THROW(parse_config(path), ConfigError);
}

TEST(Config, RoundTripThroughJson) {
  const char* docs[] = {
      R"({"objective": {"kind": "noisy_quadratic", "dimension": 4,
                        "noise": {"M": 2, "C": 0.5}},
          "delay": {"compute": {"dist": "exponential", "mean": 2}, "D0": 3,
                    "scaling": "log2_tree"},
          "train": {"workers": 8, "lr": 0.05, "max_seconds": 100, "seed": 9,
                    "momentum": {"type": "local", "beta": 0.7},
                    "lr_decay": {"factor": 0.5, "milestones": [10, 20]},
                    "bound_tracking": {"smoothness": 1, "variance_slope": 2}},
          "schedule": {"type": "adacomm", "T0": 25, "tau0": 8, "gamma": 0.25,
                       "slack": 2, "mode": "basic", "defer_lr_decay": false,
                       "tau_max": 40, "tau0_grid": [1, 8], "grid_budget": 30}})",
      R"({"objective": {"kind": "tiny_mlp", "dimension": 3, "n_points": 50,
                        "hidden_units": 4, "data_seed": 3},
          "delay": {"compute": {"dist": "shifted_exponential", "shift": 1,
                                "mean": 0.5},
                    "D0": 2, "scaling": {"table": {"2": 1.5, "4": 3}}},
          "train": {"workers": 4, "batch_size": 5, "lr": 0.1,
                    "max_iterations": 500, "init_value": 0.2, "dense_stats": true,
                    "momentum": {"type": "block", "beta_global": 0.2,
                                 "beta_local": 0.8},
                    "lr_decay": {"milestones": [3], "unit": "epochs"}},
          "schedule": {"type": "fixed", "tau": 6},
          "sweep": {"parameter": "schedule.tau", "values": [1, 2],
                    "seed_policy": "per_run", "targets": [0.1]}})",
      R"({"objective": {"kind": "logistic", "dimension": 2, "n_points": 20},
          "delay": {"D0": 1, "scaling": "linear"},
          "train": {"lr": 1, "max_seconds": 5, "max_iterations": 9}})",
  };
  for (const char* text : docs) {
    const json once = to_json(parse_config_json(json::parse(text)));
    const json twice = to_json(parse_config_json(once));
    EXPECT_EQ(once, twice) << once.dump(2);
  }
}

TEST(JsonPath, DottedToPointer) {
  EXPECT_EQ(dotted_to_pointer("schedule.T0").to_string(), "/schedule/T0");
  EXPECT_EQ(dotted_to_pointer("train").to_string(), "/train");
}

}  // namespace
}  // namespace adacomm::tools
