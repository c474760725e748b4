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

#include "modalchain/world.hpp"

#include <algorithm>
#include <cmath>

#include "modalchain/alias.hpp"

namespace modalchain {

namespace ju = json_util;

namespace {

Json VecToJson(const Vec3& v) { return Json::array({v.x, v.y, v.z}); }

Vec3 VecFromJson(const Json& j, std::string_view path) {
  auto v = ju::AsNumberArray(j, path);
  if (v.size() != 3) throw SchemaError(std::string(path), "expected [x, y, z]");
  return {v[0], v[1], v[2]};
}

template <typename T>
Json OptToJson(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json HandOpt(const std::optional<Hand>& h) { return h ? Json(std::string(HandName(*h))) : Json(nullptr); }

std::optional<Hand> HandFromJson(const Json& j, std::string_view path) {
  if (j.is_null()) return std::nullopt;
  auto h = ParseHand(ju::AsString(j, path));
  if (!h) throw SchemaError(std::string(path), "expected \"left\" or \"right\"");
  return h;
}

std::size_t Levenshtein(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

std::string JoinQuoted(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += ", ";
    out += "'" + n + "'";
  }
  return out;
}

void DiffSection(const Json& before, const Json& after, const std::string& prefix,
                 std::vector<StateDelta>& out) {
  for (const auto& [name, b] : before.items()) {
    if (!after.contains(name)) continue;
    const Json& a = after.at(name);
    for (const auto& [field, bv] : b.items()) {
      const Json& av = a.at(field);
      if (av != bv) out.push_back({prefix + "." + name, field, bv, av});
    }
  }
}

struct Failure {
  std::string reason;
};

}  // namespace

double Distance(const Vec3& a, const Vec3& b) {
  return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) + (a.z - b.z) * (a.z - b.z));
}

Json WorldToJson(const WorldState& world) {
  Json objects = Json::object();
  for (const auto& [name, o] : world.objects) {
    objects[name] = {{"position", VecToJson(o.position)},
                     {"orientation_deg", o.orientation_deg},
                     {"attached_to", HandOpt(o.attached_to)},
                     {"insert_target", OptToJson(o.insert_target)},
                     {"inserted", o.inserted},
                     {"extent_m", o.extent_m}};
  }
  Json grippers = Json::object();
  for (Hand h : kAllHands) {
    const GripperState& g = world.gripper(h);
    grippers[std::string(HandName(h))] = {{"position", VecToJson(g.position)},
                                          {"wrist_deg", g.wrist_deg},
                                          {"held", OptToJson(g.held)},
                                          {"grip_force", g.grip_force}};
  }
  Json marks = Json::array();
  for (const Mark& m : world.marks) {
    marks.push_back(
        {{"name", m.name}, {"on", m.on}, {"position", VecToJson(m.position)}, {"cleared", m.cleared}});
  }
  return {{"thresholds",
           {{"grasp_radius_m", world.thresholds.grasp_radius_m},
            {"insert_radius_m", world.thresholds.insert_radius_m},
            {"insert_force", world.thresholds.insert_force}}},
          {"objects", objects},
          {"grippers", grippers},
          {"marks", marks}};
}

WorldState WorldFromJson(const Json& doc, std::string_view path) {
  if (!doc.is_object()) throw SchemaError(std::string(path), "expected an object");
  WorldState w;
  if (const Json* t = ju::Find(doc, "thresholds")) {
    const std::string tp = ju::Join(path, "thresholds");
    if (const Json* v = ju::Find(*t, "grasp_radius_m")) w.thresholds.grasp_radius_m = ju::AsNumber(*v, ju::Join(tp, "grasp_radius_m"));
    if (const Json* v = ju::Find(*t, "insert_radius_m")) w.thresholds.insert_radius_m = ju::AsNumber(*v, ju::Join(tp, "insert_radius_m"));
    if (const Json* v = ju::Find(*t, "insert_force")) w.thresholds.insert_force = static_cast<int>(ju::AsInteger(*v, ju::Join(tp, "insert_force")));
    if (w.thresholds.grasp_radius_m <= 0) throw SchemaError(ju::Join(tp, "grasp_radius_m"), "must be positive");
    if (w.thresholds.insert_radius_m <= 0) throw SchemaError(ju::Join(tp, "insert_radius_m"), "must be positive");
    if (w.thresholds.insert_force <= kMinForce || w.thresholds.insert_force > kMaxForce) {
      throw SchemaError(ju::Join(tp, "insert_force"), "must be in (0, 100]");
    }
  }
  if (const Json* objs = ju::Find(doc, "objects")) {
    const std::string op = ju::Join(path, "objects");
    if (!objs->is_object()) throw SchemaError(op, "expected an object");
    for (const auto& [raw, o] : objs->items()) {
      const std::string p = ju::Join(op, raw);
      const std::string name = NormalizeName(raw);
      if (name.empty() || name != raw) throw SchemaError(p, "object names must be lowercase snake_case");
      ObjectState s;
      s.position = VecFromJson(ju::Require(o, "position", p), ju::Join(p, "position"));
      if (const Json* v = ju::Find(o, "orientation_deg")) s.orientation_deg = ju::AsNumber(*v, ju::Join(p, "orientation_deg"));
      if (const Json* v = ju::Find(o, "extent_m")) s.extent_m = ju::AsNumber(*v, ju::Join(p, "extent_m"));
      if (s.extent_m < 0) throw SchemaError(ju::Join(p, "extent_m"), "must be non-negative");
      if (const Json* v = ju::Find(o, "attached_to")) s.attached_to = HandFromJson(*v, ju::Join(p, "attached_to"));
      if (const Json* v = ju::Find(o, "insert_target")) s.insert_target = ju::AsString(*v, ju::Join(p, "insert_target"));
      if (const Json* v = ju::Find(o, "inserted")) {
        if (!v->is_boolean()) throw SchemaError(ju::Join(p, "inserted"), "expected a boolean");
        s.inserted = v->get<bool>();
      }
      w.objects[name] = s;
    }
  }
  if (const Json* gs = ju::Find(doc, "grippers")) {
    const std::string gp = ju::Join(path, "grippers");
    for (const auto& [raw, g] : gs->items()) {
      const std::string p = ju::Join(gp, raw);
      auto h = ParseHand(raw);
      if (!h) throw SchemaError(p, "gripper must be \"left\" or \"right\"");
      GripperState& s = w.gripper(*h);
      s.position = VecFromJson(ju::Require(g, "position", p), ju::Join(p, "position"));
      if (const Json* v = ju::Find(g, "wrist_deg")) s.wrist_deg = ju::AsNumber(*v, ju::Join(p, "wrist_deg"));
      if (const Json* v = ju::Find(g, "held")) s.held = ju::AsString(*v, ju::Join(p, "held"));
      if (const Json* v = ju::Find(g, "grip_force")) s.grip_force = static_cast<int>(ju::AsInteger(*v, ju::Join(p, "grip_force")));
      if (s.grip_force < kMinForce || s.grip_force > kMaxForce) throw SchemaError(ju::Join(p, "grip_force"), "must be in [0, 100]");
    }
  }
  if (const Json* ms = ju::Find(doc, "marks")) {
    const std::string mp = ju::Join(path, "marks");
    if (!ms->is_array()) throw SchemaError(mp, "expected an array");
    for (std::size_t i = 0; i < ms->size(); ++i) {
      const std::string p = ju::Index(mp, i);
      const Json& m = (*ms)[i];
      Mark mark;
      mark.name = ju::AsString(ju::Require(m, "name", p), ju::Join(p, "name"));
      mark.on = NormalizeName(ju::AsString(ju::Require(m, "on", p), ju::Join(p, "on")));
      mark.position = VecFromJson(ju::Require(m, "position", p), ju::Join(p, "position"));
      if (const Json* v = ju::Find(m, "cleared")) mark.cleared = v->get<bool>();
      if (!w.objects.count(mark.on)) throw SchemaError(ju::Join(p, "on"), "unknown object '" + mark.on + "'");
      w.marks.push_back(std::move(mark));
    }
  }
  // Attachment must be mutually consistent and exclusive.
  for (Hand h : kAllHands) {
    const GripperState& g = w.gripper(h);
    if (!g.held) continue;
    const std::string p = ju::Join(ju::Join(ju::Join(path, "grippers"), HandName(h)), "held");
    auto it = w.objects.find(*g.held);
    if (it == w.objects.end()) throw SchemaError(p, "unknown object '" + *g.held + "'");
    if (it->second.attached_to && *it->second.attached_to != h) throw SchemaError(p, "object held by both grippers");
    it->second.attached_to = h;
  }
  for (auto& [name, o] : w.objects) {
    if (o.attached_to && w.gripper(*o.attached_to).held != name) {
      throw SchemaError(ju::Join(ju::Join(ju::Join(path, "objects"), name), "attached_to"),
                        "gripper does not hold this object");
    }
  }
  return w;
}

ObjectNotFound::ObjectNotFound(std::string name, std::vector<std::string> suggestions)
    : std::runtime_error("object not found: '" + name + "'" +
                         (suggestions.empty() ? std::string() : " (did you mean " + JoinQuoted(suggestions) + "?)")),
      name_(std::move(name)),
      suggestions_(std::move(suggestions)) {}

std::optional<Vec3> RegistryLocator::Locate(const WorldState& world, const std::string& name) const {
  auto it = world.objects.find(name);
  if (it == world.objects.end()) return std::nullopt;
  return it->second.position;
}

FoundObject Find(const WorldState& world, std::string_view name, const ObjectLocator* locator) {
  static const RegistryLocator kRegistry;
  if (locator == nullptr) locator = &kRegistry;
  const std::string normalized = NormalizeName(name);
  const std::string resolved = AliasTable::Builtin().Resolve(AliasCategory::kObject, normalized);
  for (const std::string& candidate : {resolved, normalized}) {
    if (!world.objects.count(candidate)) continue;
    if (auto pos = locator->Locate(world, candidate)) return {candidate, *pos};
  }
  std::vector<std::pair<std::size_t, std::string>> ranked;
  for (const auto& [obj, state] : world.objects) {
    const std::size_t d = Levenshtein(normalized, obj);
    const bool substring = !normalized.empty() &&
                           (obj.find(normalized) != std::string::npos || normalized.find(obj) != std::string::npos);
    if (substring || d <= std::max<std::size_t>(2, obj.size() / 3)) ranked.emplace_back(substring ? 0 : d, obj);
  }
  std::sort(ranked.begin(), ranked.end());
  std::vector<std::string> suggestions;
  for (std::size_t i = 0; i < ranked.size() && i < 3; ++i) suggestions.push_back(ranked[i].second);
  throw ObjectNotFound(normalized, std::move(suggestions));
}

std::vector<StateDelta> DiffWorlds(const WorldState& before, const WorldState& after) {
  const Json b = WorldToJson(before);
  const Json a = WorldToJson(after);
  std::vector<StateDelta> out;
  DiffSection(b.at("objects"), a.at("objects"), "objects", out);
  DiffSection(b.at("grippers"), a.at("grippers"), "grippers", out);
  Json bm = Json::object();
  Json am = Json::object();
  for (const Json& m : b.at("marks")) bm[m.at("name").get<std::string>()] = m;
  for (const Json& m : a.at("marks")) am[m.at("name").get<std::string>()] = m;
  DiffSection(bm, am, "marks", out);
  return out;
}

Json EventToJson(const Event& e) {
  Json deltas = Json::array();
  for (const StateDelta& d : e.deltas) {
    deltas.push_back({{"entity", d.entity}, {"field", d.field}, {"before", d.before}, {"after", d.after}});
  }
  return {{"step", e.step},
          {"skill", std::string(SkillName(e.skill))},
          {"call", e.call},
          {"outcome", e.ok ? "ok" : "failure"},
          {"reason", e.reason},
          {"hand", HandOpt(e.hand)},
          {"target", OptToJson(e.target)},
          {"applied_force", OptToJson(e.applied_force)},
          {"held_object", OptToJson(e.held_object)},
          {"rotation_deg", e.rotation_deg},
          {"deltas", deltas}};
}

Event EventFromJson(const Json& j, std::string_view path) {
  const std::string p(path);
  Event e;
  e.step = static_cast<std::size_t>(ju::AsInteger(ju::Require(j, "step", p), ju::Join(p, "step")));
  const std::string skill = ju::AsString(ju::Require(j, "skill", p), ju::Join(p, "skill"));
  auto s = SkillFromName(skill);
  if (!s) throw SchemaError(ju::Join(p, "skill"), "unknown skill '" + skill + "'");
  e.skill = *s;
  e.call = ju::AsString(ju::Require(j, "call", p), ju::Join(p, "call"));
  const std::string outcome = ju::AsString(ju::Require(j, "outcome", p), ju::Join(p, "outcome"));
  if (outcome != "ok" && outcome != "failure") throw SchemaError(ju::Join(p, "outcome"), "expected ok|failure");
  e.ok = outcome == "ok";
  if (const Json* v = ju::Find(j, "reason")) e.reason = ju::AsString(*v, ju::Join(p, "reason"));
  if (const Json* v = ju::Find(j, "hand")) e.hand = HandFromJson(*v, ju::Join(p, "hand"));
  if (const Json* v = ju::Find(j, "target")) e.target = ju::AsString(*v, ju::Join(p, "target"));
  if (const Json* v = ju::Find(j, "applied_force")) e.applied_force = static_cast<int>(ju::AsInteger(*v, ju::Join(p, "applied_force")));
  if (const Json* v = ju::Find(j, "held_object")) e.held_object = ju::AsString(*v, ju::Join(p, "held_object"));
  if (const Json* v = ju::Find(j, "rotation_deg")) e.rotation_deg = ju::AsNumber(*v, ju::Join(p, "rotation_deg"));
  if (const Json* v = ju::Find(j, "deltas")) {
    for (std::size_t i = 0; i < v->size(); ++i) {
      const Json& d = (*v)[i];
      const std::string dp = ju::Index(ju::Join(p, "deltas"), i);
      e.deltas.push_back({ju::AsString(ju::Require(d, "entity", dp), ju::Join(dp, "entity")),
                          ju::AsString(ju::Require(d, "field", dp), ju::Join(dp, "field")),
                          d.value("before", Json()), d.value("after", Json())});
    }
  }
  return e;
}

const Event& EventTrace::Append(Event e) {
  e.step = events_.size();
  events_.push_back(std::move(e));
  return events_.back();
}

const Event* EventTrace::FirstFailure() const {
  for (const Event& e : events_) {
    if (!e.ok) return &e;
  }
  return nullptr;
}

std::string EventTrace::ToJsonl() const {
  std::string out = Json{{"task", task_id_}}.dump() + "\n";
  for (const Event& e : events_) out += EventToJson(e).dump() + "\n";
  return out;
}

EventTrace EventTrace::FromJsonl(std::string_view text) {
  EventTrace trace;
  std::size_t line_no = 0;
  bool header = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw SchemaError(where, e.what());
    }
    if (!header) {
      trace.task_id_ = ju::AsString(ju::Require(j, "task", where), ju::Join(where, "task"));
      header = true;
      continue;
    }
    Event e = EventFromJson(j, where);
    if (e.step != trace.events_.size()) throw SchemaError(ju::Join(where, "step"), "steps must be consecutive");
    trace.events_.push_back(std::move(e));
  }
  if (!header) throw SchemaError("line 1", "missing trace header");
  return trace;
}

namespace {

class Executor {
 public:
  Executor(WorldState& w, const SkillCall& call, const ObjectLocator* locator, Event& ev)
      : w_(w), call_(call), locator_(locator), ev_(ev) {}

  void Run() {
    switch (call_.skill) {
      case Skill::kGrasp: Grasp(); break;
      case Skill::kRelease: Release(); break;
      case Skill::kTwist: Twist(); break;
      case Skill::kMoveTo:
        if (call_.force) {
          GuardedMove();
        } else {
          FreeMove();
        }
        break;
      case Skill::kPushTowards:
        if (!call_.force) Fail("missing force");
        GuardedMove();
        break;
      case Skill::kInsert: Insert(); break;
      case Skill::kHit: Hit(); break;
      case Skill::kPress: Press(); break;
      case Skill::kWipe: Wipe(); break;
      case Skill::kFind: Target(); break;
    }
  }

 private:
  [[noreturn]] static void Fail(std::string reason) { throw Failure{std::move(reason)}; }

  Hand RequireHand() {
    if (!call_.hand) Fail("missing hand");
    return *call_.hand;
  }

  FoundObject Target() {
    if (!call_.object) Fail("missing target");
    try {
      FoundObject found = Find(w_, *call_.object, locator_);
      ev_.target = found.name;
      return found;
    } catch (const ObjectNotFound& e) {
      Fail(e.what());
    }
  }

  int Force(int fallback) const { return call_.force.value_or(fallback); }

  void CheckForce() const {
    if (call_.force && (*call_.force < kMinForce || *call_.force > kMaxForce)) Fail("force out of range");
  }

  // Moves the gripper and whatever it holds; an inserted object that moves
  // away from its socket is no longer inserted.
  void MoveGripper(Hand h, const Vec3& to) {
    GripperState& g = w_.gripper(h);
    g.position = to;
    if (g.held) {
      ObjectState& o = w_.objects.at(*g.held);
      if (o.inserted && !(o.position == to)) o.inserted = false;
      o.position = to;
    }
  }

  double ContactRadius(const std::string& object) const {
    return std::max(w_.thresholds.grasp_radius_m, w_.objects.at(object).extent_m);
  }

  void Grasp() {
    const Hand h = RequireHand();
    CheckForce();
    GripperState& g = w_.gripper(h);
    if (g.held) Fail("hand already holding " + *g.held);
    std::string name;
    if (call_.object) {
      name = Target().name;
      const ObjectState& o = w_.objects.at(name);
      if (o.attached_to) Fail(name + " held by other hand");
      if (Distance(g.position, o.position) > w_.thresholds.grasp_radius_m) Fail(name + " out of reach");
    } else {
      double best = w_.thresholds.grasp_radius_m;
      for (const auto& [obj, o] : w_.objects) {
        if (o.attached_to) continue;
        const double d = Distance(g.position, o.position);
        if (d <= best && (name.empty() || d < best)) {
          best = d;
          name = obj;
        }
      }
      if (name.empty()) Fail("nothing within reach");
      ev_.target = name;
    }
    g.held = name;
    g.grip_force = Force(kMaxForce);
    w_.objects.at(name).attached_to = h;
    ev_.applied_force = g.grip_force;
  }

  void Release() {
    const Hand h = RequireHand();
    GripperState& g = w_.gripper(h);
    if (!g.held) Fail("hand empty");
    w_.objects.at(*g.held).attached_to.reset();
    g.held.reset();
    g.grip_force = 0;
  }

  void Twist() {
    const Hand h = RequireHand();
    if (!call_.direction || !IsRotational(*call_.direction)) Fail("direction is not a rotation");
    if (!call_.degrees || *call_.degrees <= 0) Fail("degrees must be positive");
    const double rotation = static_cast<double>(*call_.degrees) *
                            (*call_.direction == Direction::kCounterclockwise ? 1.0 : -1.0);
    GripperState& g = w_.gripper(h);
    g.wrist_deg += rotation;
    if (g.held) w_.objects.at(*g.held).orientation_deg += rotation;
    ev_.rotation_deg = rotation;
  }

  void FreeMove() {
    const Hand h = RequireHand();
    const FoundObject target = Target();
    if (w_.gripper(h).held == target.name) Fail("cannot move to the held object");
    MoveGripper(h, target.position);
  }

  // Approaches the target and stops where the gripper meets its extent.
  void GuardedMove() {
    const Hand h = RequireHand();
    CheckForce();
    const FoundObject target = Target();
    if (w_.gripper(h).held == target.name) Fail("cannot move to the held object");
    const Vec3 from = w_.gripper(h).position;
    const double d = Distance(from, target.position);
    const double extent = w_.objects.at(target.name).extent_m;
    Vec3 stop = from;
    if (d > extent) {
      const double s = (d - extent) / d;
      stop = {from.x + (target.position.x - from.x) * s, from.y + (target.position.y - from.y) * s,
              from.z + (target.position.z - from.z) * s};
    }
    MoveGripper(h, stop);
    ev_.applied_force = *call_.force;
  }

  void Insert() {
    const Hand h = RequireHand();
    CheckForce();
    GripperState& g = w_.gripper(h);
    if (!g.held) Fail("hand empty");
    const FoundObject target = Target();
    if (target.name == *g.held) Fail("cannot insert an object into itself");
    if (Distance(g.position, target.position) > w_.thresholds.insert_radius_m) Fail(target.name + " out of reach");
    const int force = Force(g.grip_force);
    if (force < w_.thresholds.insert_force) {
      Fail("insufficient force (" + std::to_string(force) + " < " + std::to_string(w_.thresholds.insert_force) + ")");
    }
    const std::string held = *g.held;
    MoveGripper(h, target.position);
    ObjectState& o = w_.objects.at(held);
    o.inserted = true;
    o.insert_target = target.name;
    g.grip_force = force;
    ev_.applied_force = force;
  }

  void Hit() {
    CheckForce();
    if (!call_.force) Fail("missing force");
    Target();
    ev_.applied_force = *call_.force;
  }

  void Press() {
    const Hand h = RequireHand();
    CheckForce();
    if (!call_.force) Fail("missing force");
    const FoundObject target = Target();
    if (Distance(w_.gripper(h).position, target.position) > ContactRadius(target.name)) {
      Fail("no contact with " + target.name);
    }
    ev_.applied_force = *call_.force;
  }

  void Wipe() {
    const Hand h = RequireHand();
    const FoundObject target = Target();
    const double reach = ContactRadius(target.name);
    if (Distance(w_.gripper(h).position, target.position) > reach) Fail("no contact with " + target.name);
    for (Mark& m : w_.marks) {
      if (m.on == target.name && Distance(m.position, target.position) <= reach) m.cleared = true;
    }
  }

  WorldState& w_;
  const SkillCall& call_;
  const ObjectLocator* locator_;
  Event& ev_;
};

}  // namespace

Event ApplySkill(WorldState& world, const SkillCall& call, const ObjectLocator* locator) {
  Event ev;
  ev.skill = call.skill;
  ev.call = call.text;
  ev.hand = call.hand;
  if (call.hand) ev.held_object = world.gripper(*call.hand).held;
  WorldState next = world;
  try {
    Executor(next, call, locator, ev).Run();
  } catch (const Failure& f) {
    ev.ok = false;
    ev.reason = f.reason;
    ev.applied_force.reset();
    ev.rotation_deg = 0.0;
    return ev;
  }
  ev.deltas = DiffWorlds(world, next);
  world = std::move(next);
  return ev;
}

}  // namespace modalchain
