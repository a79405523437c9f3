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

#include "adacomm/tools/manifest.hpp"

#include <ctime>
#include <fstream>
#include <stdexcept>

#include <fmt/chrono.h>
#include <fmt/format.h>

#ifndef ADACOMM_VERSION
#define ADACOMM_VERSION "unknown"
#endif

namespace adacomm::tools {

std::string version_string() { return ADACOMM_VERSION; }

nlohmann::json to_json(const RunManifest& m) {
  const std::tm utc =
      fmt::gmtime(std::chrono::system_clock::to_time_t(m.started_at));
  return {
      {"command", m.command},
      {"version", m.version},
      {"seed", m.seed},
      {"config", m.config},
      {"outputs", m.outputs},
      {"started_at", fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", utc)},
      {"elapsed_seconds", m.elapsed_seconds},
      {"notes", m.notes},
  };
}

std::filesystem::path manifest_path(const std::filesystem::path& csv) {
  return std::filesystem::path(csv.string() + ".manifest.json");
}

void write_manifest(const std::filesystem::path& csv,
                    const RunManifest& manifest) {
  const auto path = manifest_path(csv);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_json(manifest).dump(2) << '\n';
}

}  // namespace adacomm::tools
