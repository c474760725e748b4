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

#ifndef MODALCHAIN_TASK_HPP_
#define MODALCHAIN_TASK_HPP_

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "modalchain/json_util.hpp"
#include "modalchain/world.hpp"

namespace modalchain {

enum class TaskId { kOpeningBottle, kInsertingPlug, kWipingBoard, kPlayingDrum, kPressingCube };

std::string_view TaskIdName(TaskId t);  // "opening_bottle", ...
std::optional<TaskId> ParseTaskId(std::string_view s);

// Qualitative force levels used by success reports only.
enum class ForceBand { kLow, kMid, kHigh };

ForceBand ForceBandOf(int force);  // low <= 33, mid 34-66, high >= 67
std::string_view ForceBandName(ForceBand b);

// Success-predicate parameters. Only the fields relevant to the task are
// read; the rest keep their defaults.
struct SuccessParams {
  std::string object;                 // rotated / inserted / wiped / hit / pressed
  std::string insert_target = "power_strip";
  double min_rotation_deg = 360.0;    // opening_bottle
  std::vector<int> pattern;           // playing_drum beats, pressing_cube presses
  int force_tolerance = 20;           // playing_drum
};

struct TaskSpec {
  TaskId task = TaskId::kOpeningBottle;
  WorldState initial;
  SuccessParams success;
};

TaskSpec TaskSpecFromJson(const Json& doc);
TaskSpec LoadTaskSpec(const std::filesystem::path& path);
Json TaskSpecToJson(const TaskSpec& spec);

// A trace produced for a different task than the one being checked.
class TaskMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SuccessReport {
  bool success = false;
  std::string task;
  std::vector<std::string> details;
  std::optional<std::size_t> failed_step;  // first failure event, if any

  std::string Summary() const;
};

// Artifact-defined stand-ins for the on-robot success criteria.
SuccessReport CheckSuccess(const TaskSpec& spec, const EventTrace& trace, const WorldState& final_world);

}  // namespace modalchain

#endif  // MODALCHAIN_TASK_HPP_
