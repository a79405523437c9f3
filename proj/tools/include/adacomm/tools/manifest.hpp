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

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace adacomm::tools {

std::string version_string();

/// Metadata written next to every CSV so the file can be regenerated.
struct RunManifest {
  std::string command;
  /// Everything the command read: the normalised config document plus any
  /// command-line parameters.
  nlohmann::json config = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::string version = version_string();
  std::vector<std::string> outputs;
  std::chrono::system_clock::time_point started_at{};
  double elapsed_seconds = 0.0;
  nlohmann::json notes = nlohmann::json::object();
};

nlohmann::json to_json(const RunManifest& manifest);

/// "<csv>.manifest.json"
std::filesystem::path manifest_path(const std::filesystem::path& csv);

void write_manifest(const std::filesystem::path& csv,
                    const RunManifest& manifest);

}  // namespace adacomm::tools
