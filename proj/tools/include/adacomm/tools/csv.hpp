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

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adacomm/engine.hpp"

namespace adacomm::tools {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

inline constexpr const char* kTraceHeader =
    "wall_clock,iteration,round,tau_used,lr_used,train_loss,grad_norm_sq";
inline constexpr const char* kEventsHeader =
    "wall_clock,interval,F_ratio,lr_ratio,candidate,branch,tau_out";

/// One row per synchronisation.
void write_trace_csv(std::ostream& out, const RunTrace& trace);
/// One row per AdaComm checkpoint decision.
void write_events_csv(std::ostream& out, const RunTrace& trace);

/// Parses a file written by write_trace_csv. Throws std::runtime_error on a
/// wrong header or malformed row.
std::vector<TraceRecord> read_trace_csv(std::istream& in);

struct RuntimeRow {
  int workers = 1;
  int tau = 1;
  double alpha = 0.0;
  double mean_time = 0.0;
  double stderr_time = 0.0;
  double p50 = 0.0;
  double p99 = 0.0;
  std::optional<double> speedup;
  std::optional<double> speedup_formula;
};

/// m,tau,alpha,mean_time,stderr,p50,p99 plus speedup,speedup_formula when
/// with_speedup is set.
void write_runtime_csv(std::ostream& out, std::span<const RuntimeRow> rows,
                       bool with_speedup);

}  // namespace adacomm::tools
