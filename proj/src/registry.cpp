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

#include "modalchain/skills.hpp"

#include <array>
#include <cctype>

namespace modalchain {

namespace {

struct SkillNames {
  Skill skill;
  std::string_view display;
  std::string_view token;
};

constexpr std::array<SkillNames, 10> kSkillNames = {{
    {Skill::kGrasp, "Grasp", "grasp"},
    {Skill::kRelease, "Release", "release"},
    {Skill::kTwist, "Twist", "twist"},
    {Skill::kMoveTo, "Move_to", "move_to"},
    {Skill::kInsert, "Insert", "insert"},
    {Skill::kPushTowards, "Push_towards", "push_towards"},
    {Skill::kHit, "Hit", "hit"},
    {Skill::kPress, "Press", "press"},
    {Skill::kWipe, "Wipe", "wipe"},
    {Skill::kFind, "Find", "find"},
}};

constexpr std::array<std::pair<Direction, std::string_view>, 5> kDirectionNames = {{
    {Direction::kClockwise, "clockwise"},
    {Direction::kCounterclockwise, "counterclockwise"},
    {Direction::kUp, "up"},
    {Direction::kDown, "down"},
    {Direction::kToward, "toward"},
}};

}  // namespace

std::string_view SkillName(Skill s) { return kSkillNames[static_cast<std::size_t>(s)].display; }
std::string_view SkillToken(Skill s) { return kSkillNames[static_cast<std::size_t>(s)].token; }

std::optional<Skill> SkillFromName(std::string_view name) {
  for (const auto& n : kSkillNames) {
    if (name == n.display || name == n.token) return n.skill;
  }
  return std::nullopt;
}

std::string_view DirectionName(Direction d) {
  return kDirectionNames[static_cast<std::size_t>(d)].second;
}

std::optional<Direction> DirectionFromName(std::string_view name) {
  for (const auto& [d, n] : kDirectionNames) {
    if (n == name) return d;
  }
  return std::nullopt;
}

std::string_view ParamRoleName(ParamRole r) {
  switch (r) {
    case ParamRole::kHand: return "hand";
    case ParamRole::kObject: return "object";
    case ParamRole::kTarget: return "target";
    case ParamRole::kDirection: return "direction";
    case ParamRole::kDegrees: return "degrees";
    case ParamRole::kForce: return "force";
  }
  return "?";
}

const SkillRegistry& SkillRegistry::Default() {
  using R = ParamRole;
  static const SkillRegistry registry({
      {Skill::kGrasp, {R::kHand}, {R::kObject, R::kForce}},
      {Skill::kRelease, {R::kHand}, {}},
      {Skill::kTwist, {R::kHand, R::kDirection, R::kDegrees}, {}},
      {Skill::kMoveTo, {R::kHand, R::kTarget}, {R::kForce}},
      {Skill::kInsert, {R::kHand, R::kTarget, R::kForce}, {}},
      {Skill::kPushTowards, {R::kHand, R::kTarget, R::kForce}, {}},
      {Skill::kHit, {R::kTarget, R::kForce}, {}},
      {Skill::kPress, {R::kHand, R::kTarget, R::kForce}, {}},
      {Skill::kWipe, {R::kHand, R::kTarget}, {}},
      {Skill::kFind, {R::kObject}, {}},
  });
  return registry;
}

const SkillSignature* SkillRegistry::Lookup(Skill s) const {
  for (const auto& sig : signatures_) {
    if (sig.skill == s) return &sig;
  }
  return nullptr;
}

const SkillSignature* SkillRegistry::Lookup(std::string_view name) const {
  auto s = SkillFromName(name);
  return s ? Lookup(*s) : nullptr;
}

}  // namespace modalchain
