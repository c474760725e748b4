// Copyright 2026 The modalchain Authors
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

#ifndef MODALCHAIN_REPORT_HPP_
#define MODALCHAIN_REPORT_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "modalchain/json_util.hpp"
#include "modalchain/orchestrator.hpp"

namespace modalchain {

struct TrialRecord {
  std::string recording;
  std::size_t trial = 0;
  TrialOutcome outcome;
};

// One (task, strategy, modality subset) cell, aggregated over every
// recording of the task.
struct MetricsRow {
  std::string task;
  std::string strategy;
  std::string modalities;  // "force+hand+image"
  std::vector<TrialRecord> trials;
  double mean_accuracy = 0.0;
  double mean_similarity = 0.0;
  std::size_t query_count = 0;
  std::vector<std::string> notes;  // failure notes, in trial order
};

struct MetricsTable {
  std::string backend;
  std::string model;
  std::uint64_t seed = 0;
  std::vector<MetricsRow> rows;
};

// Recomputes means, query count and notes from the per-trial values.
void Finalize(MetricsRow& row);

// `task,strategy,modalities,accuracy,similarity,trials`, one line per row,
// means fixed to 4 decimals.
std::string EmitCsv(const MetricsTable& table);
// JSON mirror with per-trial detail. Parsing and re-emitting is lossless.
std::string EmitJson(const MetricsTable& table);
MetricsTable ParseJsonReport(std::string_view text);

// Writes metrics.csv and metrics.json under `dir`.
void WriteReports(const MetricsTable& table, const std::filesystem::path& dir);

}  // namespace modalchain

#endif  // MODALCHAIN_REPORT_HPP_
