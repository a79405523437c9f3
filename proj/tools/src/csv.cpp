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

#include "adacomm/tools/csv.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace adacomm::tools {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

template <typename T>
T parse_cell(const std::string& cell, std::size_t line_no) {
  T value{};
  const auto* end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(cell.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw std::runtime_error("trace csv line " + std::to_string(line_no) +
                             ": malformed value '" + cell + "'");
  }
  return value;
}

std::string optional_cell(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

}  // namespace

std::string format_double(double value) { return fmt::format("{}", value); }

void write_trace_csv(std::ostream& out, const RunTrace& trace) {
  out << kTraceHeader << '\n';
  for (const auto& r : trace.records) {
    out << fmt::format("{},{},{},{},{},{},{}\n", r.wall_clock, r.iteration,
                       r.round, r.tau, r.lr, r.train_loss, r.grad_norm_sq);
  }
}

void write_events_csv(std::ostream& out, const RunTrace& trace) {
  out << kEventsHeader << '\n';
  for (const auto& d : trace.decisions) {
    out << fmt::format("{},{},{},{},{},{},{}\n", d.wall_clock, d.interval,
                       d.loss_ratio, d.lr_ratio, d.candidate,
                       to_string(d.branch), d.period);
  }
}

std::vector<TraceRecord> read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kTraceHeader) {
    throw std::runtime_error("trace csv: unexpected header");
  }
  std::vector<TraceRecord> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != 7) {
      throw std::runtime_error("trace csv line " + std::to_string(line_no) +
                               ": expected 7 columns");
    }
    TraceRecord r;
    r.wall_clock = parse_cell<double>(cells[0], line_no);
    r.iteration = parse_cell<long long>(cells[1], line_no);
    r.round = parse_cell<long long>(cells[2], line_no);
    r.tau = parse_cell<int>(cells[3], line_no);
    r.lr = parse_cell<double>(cells[4], line_no);
    r.train_loss = parse_cell<double>(cells[5], line_no);
    r.grad_norm_sq = parse_cell<double>(cells[6], line_no);
    out.push_back(r);
  }
  return out;
}

void write_runtime_csv(std::ostream& out, std::span<const RuntimeRow> rows,
                       bool with_speedup) {
  out << "m,tau,alpha,mean_time,stderr,p50,p99";
  if (with_speedup) out << ",speedup,speedup_formula";
  out << '\n';
  for (const auto& r : rows) {
    out << fmt::format("{},{},{},{},{},{},{}", r.workers, r.tau, r.alpha,
                       r.mean_time, r.stderr_time, r.p50, r.p99);
    if (with_speedup) {
      out << ',' << optional_cell(r.speedup) << ','
          << optional_cell(r.speedup_formula);
    }
    out << '\n';
  }
}

}  // namespace adacomm::tools
