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

#ifndef MODALCHAIN_SKILLS_HPP_
#define MODALCHAIN_SKILLS_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace modalchain {

enum class Skill { kGrasp, kRelease, kTwist, kMoveTo, kInsert, kPushTowards, kHit, kPress, kWipe, kFind };

enum class Direction { kClockwise, kCounterclockwise, kUp, kDown, kToward };

// Display name as used in programs: "Grasp", "Move_to", ...
std::string_view SkillName(Skill s);
// Lowercase token: "grasp", "move_to", ...
std::string_view SkillToken(Skill s);
// Accepts display names and lowercase tokens (after alias resolution).
std::optional<Skill> SkillFromName(std::string_view name);

std::string_view DirectionName(Direction d);
std::optional<Direction> DirectionFromName(std::string_view name);
inline bool IsRotational(Direction d) {
  return d == Direction::kClockwise || d == Direction::kCounterclockwise;
}

// Role of one positional skill parameter.
enum class ParamRole {
  kHand,       // 'left' | 'right'
  kObject,     // object name string
  kTarget,     // object name string or Find(...)
  kDirection,  // Direction name
  kDegrees,    // integer > 0
  kForce,      // integer in [kMinForce, kMaxForce]
};

std::string_view ParamRoleName(ParamRole r);

inline constexpr int kMinForce = 0;
inline constexpr int kMaxForce = 100;

// Positional signature: all `required` parameters, then an optional tail
// that may be truncated from the right.
struct SkillSignature {
  Skill skill;
  std::vector<ParamRole> required;
  std::vector<ParamRole> optional;

  std::size_t MinArity() const { return required.size(); }
  std::size_t MaxArity() const { return required.size() + optional.size(); }
  ParamRole RoleAt(std::size_t i) const {
    return i < required.size() ? required[i] : optional[i - required.size()];
  }
};

class SkillRegistry {
 public:
  // Grasp(hand[, object, force]); Release(hand); Twist(hand, direction,
  // degrees); Move_to(hand, target[, force]); Insert(hand, target, force);
  // Push_towards(hand, target, force); Hit(target, force);
  // Press(hand, target, force); Wipe(hand, target); Find(object).
  static const SkillRegistry& Default();

  explicit SkillRegistry(std::vector<SkillSignature> signatures)
      : signatures_(std::move(signatures)) {}

  const SkillSignature* Lookup(Skill s) const;
  const SkillSignature* Lookup(std::string_view name) const;
  const std::vector<SkillSignature>& signatures() const { return signatures_; }

 private:
  std::vector<SkillSignature> signatures_;
};

}  // namespace modalchain

#endif  // MODALCHAIN_SKILLS_HPP_
