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

#include "modalchain/task.hpp"

#include <cmath>
#include <cstdlib>

#include "modalchain/alias.hpp"
#include "modalchain/format.hpp"

namespace modalchain {

namespace ju = json_util;

namespace {

struct TaskInfo {
  TaskId id;
  std::string_view name;
  std::string_view default_object;
};

constexpr TaskInfo kTasks[] = {
    {TaskId::kOpeningBottle, "opening_bottle", "bottle_cap"},
    {TaskId::kInsertingPlug, "inserting_plug", "plug"},
    {TaskId::kWipingBoard, "wiping_board", "board"},
    {TaskId::kPlayingDrum, "playing_drum", "drum"},
    {TaskId::kPressingCube, "pressing_cube", "cube"},
};

const TaskInfo& Info(TaskId t) {
  for (const TaskInfo& i : kTasks) {
    if (i.id == t) return i;
  }
  return kTasks[0];
}

std::string Num(double v) { return FormatFixed(v, 0); }

}  // namespace

std::string_view TaskIdName(TaskId t) { return Info(t).name; }

std::optional<TaskId> ParseTaskId(std::string_view s) {
  for (const TaskInfo& i : kTasks) {
    if (i.name == s) return i.id;
  }
  return std::nullopt;
}

ForceBand ForceBandOf(int force) {
  if (force <= 33) return ForceBand::kLow;
  if (force <= 66) return ForceBand::kMid;
  return ForceBand::kHigh;
}

std::string_view ForceBandName(ForceBand b) {
  switch (b) {
    case ForceBand::kLow: return "low";
    case ForceBand::kMid: return "mid";
    case ForceBand::kHigh: return "high";
  }
  return "?";
}

TaskSpec TaskSpecFromJson(const Json& doc) {
  if (!doc.is_object()) throw SchemaError("", "task spec must be an object");
  TaskSpec spec;
  const std::string task = ju::AsString(ju::Require(doc, "task", ""), "task");
  auto id = ParseTaskId(task);
  if (!id) throw SchemaError("task", "unknown task '" + task + "'");
  spec.task = *id;
  spec.initial = WorldFromJson(doc, "");
  spec.success.object = std::string(Info(*id).default_object);

  if (const Json* s = ju::Find(doc, "success")) {
    if (const Json* v = ju::Find(*s, "object")) spec.success.object = NormalizeName(ju::AsString(*v, "success.object"));
    if (const Json* v = ju::Find(*s, "insert_target")) {
      spec.success.insert_target = NormalizeName(ju::AsString(*v, "success.insert_target"));
    }
    if (const Json* v = ju::Find(*s, "min_rotation_deg")) spec.success.min_rotation_deg = ju::AsNumber(*v, "success.min_rotation_deg");
    if (const Json* v = ju::Find(*s, "force_tolerance")) {
      spec.success.force_tolerance = static_cast<int>(ju::AsInteger(*v, "success.force_tolerance"));
    }
    if (const Json* v = ju::Find(*s, "pattern")) {
      if (!v->is_array()) throw SchemaError("success.pattern", "expected an array of forces");
      for (std::size_t i = 0; i < v->size(); ++i) {
        const long long f = ju::AsInteger((*v)[i], ju::Index("success.pattern", i));
        if (f < kMinForce || f > kMaxForce) throw SchemaError(ju::Index("success.pattern", i), "force must be in [0, 100]");
        spec.success.pattern.push_back(static_cast<int>(f));
      }
    }
  }
  if (spec.success.min_rotation_deg <= 0) throw SchemaError("success.min_rotation_deg", "must be positive");
  if (spec.success.force_tolerance <= 0) throw SchemaError("success.force_tolerance", "must be positive");
  if (!spec.initial.objects.count(spec.success.object)) {
    throw SchemaError("success.object", "unknown object '" + spec.success.object + "'");
  }
  switch (spec.task) {
    case TaskId::kInsertingPlug:
      if (!spec.initial.objects.count(spec.success.insert_target)) {
        throw SchemaError("success.insert_target", "unknown object '" + spec.success.insert_target + "'");
      }
      break;
    case TaskId::kPlayingDrum:
    case TaskId::kPressingCube:
      if (spec.success.pattern.empty()) throw SchemaError("success.pattern", "must list at least one force");
      break;
    case TaskId::kWipingBoard: {
      bool any = false;
      for (const Mark& m : spec.initial.marks) any = any || m.on == spec.success.object;
      if (!any) throw SchemaError("marks", "wiping task needs at least one mark on " + spec.success.object);
      break;
    }
    case TaskId::kOpeningBottle:
      break;
  }
  return spec;
}

TaskSpec LoadTaskSpec(const std::filesystem::path& path) { return TaskSpecFromJson(ReadJsonFile(path)); }

Json TaskSpecToJson(const TaskSpec& spec) {
  Json doc = {{"task", std::string(TaskIdName(spec.task))}};
  const Json world = WorldToJson(spec.initial);
  for (const auto& [k, v] : world.items()) doc[k] = v;
  Json s = {{"object", spec.success.object}};
  switch (spec.task) {
    case TaskId::kOpeningBottle: s["min_rotation_deg"] = spec.success.min_rotation_deg; break;
    case TaskId::kInsertingPlug: s["insert_target"] = spec.success.insert_target; break;
    case TaskId::kPlayingDrum:
      s["pattern"] = spec.success.pattern;
      s["force_tolerance"] = spec.success.force_tolerance;
      break;
    case TaskId::kPressingCube: s["pattern"] = spec.success.pattern; break;
    case TaskId::kWipingBoard: break;
  }
  doc["success"] = s;
  return doc;
}

std::string SuccessReport::Summary() const {
  std::string out = task + ": " + (success ? "success" : "failure");
  for (const std::string& d : details) out += "; " + d;
  return out;
}

SuccessReport CheckSuccess(const TaskSpec& spec, const EventTrace& trace, const WorldState& final_world) {
  const std::string name(TaskIdName(spec.task));
  if (!trace.task_id().empty() && trace.task_id() != name) {
    throw TaskMismatch("trace recorded for task '" + trace.task_id() + "', checking '" + name + "'");
  }
  for (const auto& [obj, state] : spec.initial.objects) {
    if (!final_world.objects.count(obj)) throw TaskMismatch("final world lacks object '" + obj + "'");
  }
  SuccessReport report;
  report.task = name;
  bool ok = true;
  if (const Event* f = trace.FirstFailure()) {
    ok = false;
    report.failed_step = f->step;
    report.details.push_back("step " + std::to_string(f->step) + " " + f->call + " failed: " + f->reason);
  }
  const std::string& object = spec.success.object;

  // Successful calls of `skill` aimed at the task object, in trace order.
  auto forces_on = [&](Skill skill) {
    std::vector<int> out;
    for (const Event& e : trace.events()) {
      if (e.ok && e.skill == skill && e.target == object && e.applied_force) out.push_back(*e.applied_force);
    }
    return out;
  };

  switch (spec.task) {
    case TaskId::kOpeningBottle: {
      double rotation = 0.0;
      for (const Event& e : trace.events()) {
        if (e.ok && e.skill == Skill::kTwist && e.held_object == object) rotation += e.rotation_deg;
      }
      report.details.push_back(object + " rotated " + Num(rotation) + " deg counterclockwise (required " +
                               Num(spec.success.min_rotation_deg) + ")");
      ok = ok && rotation >= spec.success.min_rotation_deg;
      break;
    }
    case TaskId::kInsertingPlug: {
      const ObjectState& o = final_world.objects.at(object);
      const bool inserted = o.inserted && o.insert_target == spec.success.insert_target;
      int best = -1;
      for (const Event& e : trace.events()) {
        if (e.ok && e.skill == Skill::kInsert && e.target == spec.success.insert_target && e.applied_force) {
          best = std::max(best, *e.applied_force);
        }
      }
      const bool forceful = best >= final_world.thresholds.insert_force;
      report.details.push_back(object + (inserted ? " inserted into " : " not inserted into ") +
                               spec.success.insert_target);
      if (best >= 0) report.details.push_back("insert force " + std::to_string(best));
      ok = ok && inserted && forceful;
      break;
    }
    case TaskId::kWipingBoard: {
      std::size_t total = 0;
      std::size_t cleared = 0;
      for (const Mark& m : final_world.marks) {
        if (m.on != object) continue;
        ++total;
        cleared += m.cleared ? 1 : 0;
      }
      report.details.push_back(std::to_string(cleared) + " of " + std::to_string(total) + " marks cleared");
      ok = ok && total > 0 && cleared == total;
      break;
    }
    case TaskId::kPlayingDrum:
    case TaskId::kPressingCube: {
      const bool drum = spec.task == TaskId::kPlayingDrum;
      const std::vector<int> got = forces_on(drum ? Skill::kHit : Skill::kPress);
      const std::vector<int>& want = spec.success.pattern;
      const std::string what = drum ? "beat" : "press";
      if (got.size() != want.size()) {
        report.details.push_back(what + " count mismatch: got " + std::to_string(got.size()) + ", expected " +
                                 std::to_string(want.size()));
        ok = false;
        break;
      }
      for (std::size_t i = 0; i < got.size(); ++i) {
        const bool match = drum ? std::abs(got[i] - want[i]) <= spec.success.force_tolerance
                                : ForceBandOf(got[i]) == ForceBandOf(want[i]);
        if (!match) {
          ok = false;
          report.details.push_back(
              what + " " + std::to_string(i + 1) + " force " + std::to_string(got[i]) +
              (drum ? " outside +/-" + std::to_string(spec.success.force_tolerance) + " of " + std::to_string(want[i])
                    : " (" + std::string(ForceBandName(ForceBandOf(got[i]))) + ") expected " +
                          std::string(ForceBandName(ForceBandOf(want[i])))));
        }
      }
      if (ok) report.details.push_back(std::to_string(got.size()) + (drum ? " beats" : " presses") + " match the pattern");
      break;
    }
  }
  report.success = ok;
  return report;
}

}  // namespace modalchain
