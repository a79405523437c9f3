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

#include "adacomm/tools/sweep.hpp"

#include <algorithm>
#include <future>
#include <ostream>
#include <thread>

#include "adacomm/tools/csv.hpp"
#include "adacomm/tools/experiment.hpp"
#include "adacomm/tools/json_path.hpp"
#include "adacomm/trace_metrics.hpp"

namespace adacomm::tools {

namespace {

std::string csv_cell(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string value_text(const nlohmann::json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

SweepRow run_child(const ExperimentConfig& base, const SweepSpec& spec,
                   std::size_t index) {
  SweepRow row;
  row.value = spec.values[index];
  row.time_to_target.assign(spec.targets.size(), std::nullopt);
  try {
    row.config = sweep_child_config(base, spec, index);
    row.trace = run_experiment(*row.config).trace;
  } catch (const std::exception& e) {
    row.error = e.what();
    return row;
  }
  const auto& trace = row.trace;
  row.diverged = trace.diverged;
  if (trace.diverged) row.error = trace.diagnostic;
  row.final_loss = trace.records.empty() ? trace.initial_loss
                                         : trace.records.back().train_loss;
  if (!trace.records.empty()) row.plateau_loss = plateau_loss(trace);
  for (std::size_t t = 0; t < spec.targets.size(); ++t) {
    row.time_to_target[t] = time_to_target(trace, spec.targets[t]);
  }
  return row;
}

}  // namespace

ExperimentConfig sweep_child_config(const ExperimentConfig& base,
                                    const SweepSpec& spec, std::size_t index) {
  nlohmann::json doc = to_json(base);
  doc.erase("sweep");
  const auto pointer = dotted_to_pointer(spec.parameter);
  if (!doc.contains(pointer)) {
    throw ConfigError("sweep.parameter", "no such field '" + spec.parameter + "'");
  }
  doc[pointer] = spec.values.at(index);
  if (spec.seed_policy == SeedPolicy::kPerRun) {
    doc["train"]["seed"] = base.train.seed + index;
  }
  return parse_config_json(doc);
}

SweepResult run_sweep(const ExperimentConfig& base, const SweepSpec& spec,
                      unsigned max_parallel) {
  SweepResult result;
  result.parameter = spec.parameter;
  result.targets = spec.targets;
  result.rows.resize(spec.values.size());

  unsigned width = max_parallel != 0 ? max_parallel
                                     : std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t start = 0; start < spec.values.size(); start += width) {
    const std::size_t stop = std::min(spec.values.size(), start + width);
    std::vector<std::future<SweepRow>> batch;
    for (std::size_t i = start; i < stop; ++i) {
      batch.push_back(std::async(std::launch::async, run_child, std::cref(base),
                                 std::cref(spec), i));
    }
    for (std::size_t i = start; i < stop; ++i) {
      result.rows[i] = batch[i - start].get();
    }
  }
  return result;
}

void write_sweep_summary(std::ostream& out, const SweepResult& result) {
  out << "value,final_loss,plateau_loss";
  for (double t : result.targets) out << ",time_to_target_" << format_double(t);
  out << ",diverged,error\n";
  auto opt = [](const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
  };
  for (const auto& row : result.rows) {
    out << csv_cell(value_text(row.value)) << ',' << opt(row.final_loss) << ','
        << opt(row.plateau_loss);
    for (const auto& t : row.time_to_target) out << ',' << opt(t);
    out << ',' << (row.diverged ? 1 : 0) << ',' << csv_cell(row.error) << '\n';
  }
}

}  // namespace adacomm::tools
