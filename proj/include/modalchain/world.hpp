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

#ifndef MODALCHAIN_WORLD_HPP_
#define MODALCHAIN_WORLD_HPP_

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "modalchain/common.hpp"
#include "modalchain/json_util.hpp"
#include "modalchain/skills.hpp"

namespace modalchain {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  bool operator==(const Vec3&) const = default;
};

double Distance(const Vec3& a, const Vec3& b);

struct ObjectState {
  Vec3 position;
  double orientation_deg = 0.0;  // about the vertical axis, ccw positive
  std::optional<Hand> attached_to;
  std::optional<std::string> insert_target;
  bool inserted = false;
  double extent_m = 0.0;  // contact radius for guarded moves, presses, wipes
  bool operator==(const ObjectState&) const = default;
};

struct GripperState {
  Vec3 position;
  double wrist_deg = 0.0;
  std::optional<std::string> held;
  int grip_force = 0;
  bool operator==(const GripperState&) const = default;
};

// A dirt mark on an object surface, cleared by Wipe.
struct Mark {
  std::string name;
  std::string on;
  Vec3 position;
  bool cleared = false;
  bool operator==(const Mark&) const = default;
};

struct Thresholds {
  double grasp_radius_m = 0.05;
  double insert_radius_m = 0.03;
  int insert_force = 80;
  bool operator==(const Thresholds&) const = default;
};

struct WorldState {
  std::map<std::string, ObjectState> objects;
  std::array<GripperState, 2> grippers;  // indexed by Hand
  std::vector<Mark> marks;
  Thresholds thresholds;

  GripperState& gripper(Hand h) { return grippers[static_cast<std::size_t>(h)]; }
  const GripperState& gripper(Hand h) const { return grippers[static_cast<std::size_t>(h)]; }

  bool operator==(const WorldState&) const = default;
};

Json WorldToJson(const WorldState& world);
// Parses {objects, grippers, marks, thresholds}; missing sections default.
WorldState WorldFromJson(const Json& doc, std::string_view path = "");

class ObjectNotFound : public std::runtime_error {
 public:
  ObjectNotFound(std::string name, std::vector<std::string> suggestions);
  const std::string& name() const { return name_; }
  const std::vector<std::string>& suggestions() const { return suggestions_; }

 private:
  std::string name_;
  std::vector<std::string> suggestions_;
};

// Source of object positions. The default reads the registered world state;
// a perception-backed locator can be swapped in with the same contract.
class ObjectLocator {
 public:
  virtual ~ObjectLocator() = default;
  virtual std::optional<Vec3> Locate(const WorldState& world, const std::string& name) const = 0;
};

class RegistryLocator : public ObjectLocator {
 public:
  std::optional<Vec3> Locate(const WorldState& world, const std::string& name) const override;
};

struct FoundObject {
  std::string name;  // canonical world name
  Vec3 position;
};

// Resolves `name` through normalization and the alias table. Throws
// ObjectNotFound carrying up to three nearest names.
FoundObject Find(const WorldState& world, std::string_view name, const ObjectLocator* locator = nullptr);

// A registry call with arguments resolved to typed values.
struct SkillCall {
  Skill skill = Skill::kFind;
  std::optional<Hand> hand;
  std::optional<std::string> object;  // object or target name as written
  std::optional<Direction> direction;
  std::optional<long long> degrees;
  std::optional<int> force;
  std::string text;  // source form, for traces
};

// One field that changed during an event, e.g. {"objects.bottle_cap",
// "orientation_deg", 0, 180}.
struct StateDelta {
  std::string entity;
  std::string field;
  Json before;
  Json after;
  bool operator==(const StateDelta&) const = default;
};

std::vector<StateDelta> DiffWorlds(const WorldState& before, const WorldState& after);

struct Event {
  std::size_t step = 0;
  Skill skill = Skill::kFind;
  std::string call;
  bool ok = true;
  std::string reason;  // set on failure
  std::optional<Hand> hand;
  std::optional<std::string> target;       // canonical object name
  std::optional<int> applied_force;        // force exerted by the call
  std::optional<std::string> held_object;  // held by `hand` while the call ran
  double rotation_deg = 0.0;               // signed wrist rotation (Twist)
  std::vector<StateDelta> deltas;

  bool operator==(const Event&) const = default;
};

Json EventToJson(const Event& e);
Event EventFromJson(const Json& j, std::string_view path = "");

// Append-only, step-ordered event log of one execution.
class EventTrace {
 public:
  EventTrace() = default;
  explicit EventTrace(std::string task_id) : task_id_(std::move(task_id)) {}

  // Assigns the next step index and returns the stored event.
  const Event& Append(Event e);
  const std::vector<Event>& events() const { return events_; }
  std::size_t size() const { return events_.size(); }
  bool empty() const { return events_.empty(); }
  const std::string& task_id() const { return task_id_; }
  void set_task_id(std::string id) { task_id_ = std::move(id); }
  // First failure event, if any.
  const Event* FirstFailure() const;

  // One JSON object per line; the first line is a {"task": ...} header.
  std::string ToJsonl() const;
  static EventTrace FromJsonl(std::string_view text);

  bool operator==(const EventTrace&) const = default;

 private:
  std::string task_id_;
  std::vector<Event> events_;
};

// Executes one call. Preconditions that fail produce an event with
// ok=false and leave `world` untouched. `event.step` is left at 0.
Event ApplySkill(WorldState& world, const SkillCall& call, const ObjectLocator* locator = nullptr);

}  // namespace modalchain

#endif  // MODALCHAIN_WORLD_HPP_
