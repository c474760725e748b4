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

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <string>
#include <vector>

#include "modalchain/alias.hpp"
#include "modalchain/lcs.hpp"
#include "modalchain/plan.hpp"
#include "test_util.hpp"

namespace modalchain {
namespace {

using testing::DataDir;

// Cubic reference: try every pair of start positions and extend.
std::size_t CubicLongestRun(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t best = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::size_t k = 0;
      while (i + k < a.size() && j + k < b.size() && a[i + k] == b[j + k]) ++k;
      best = std::max(best, k);
    }
  }
  return best;
}

TEST(LongestCommonRun, MatchesCubicReference) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::size_t> len(0, 40);
  for (int trial = 0; trial < 500; ++trial) {
    std::uniform_int_distribution<int> sym(0, 1 + trial % 4);
    std::vector<int> a(len(rng));
    std::vector<int> b(len(rng));
    for (int& x : a) x = sym(rng);
    for (int& x : b) x = sym(rng);
    const CommonRun run = LongestCommonRun(std::span<const int>(a), std::span<const int>(b));
    ASSERT_EQ(run.length, CubicLongestRun(a, b)) << "trial " << trial;
    for (std::size_t k = 0; k < run.length; ++k) {
      ASSERT_EQ(a[run.a_begin + k], b[run.b_begin + k]);
    }
  }
}

TEST(LongestCommonRun, EdgeCases) {
  const std::vector<int> empty;
  const std::vector<int> one = {1};
  EXPECT_EQ(LongestCommonSubstring(empty, one), 0u);
  EXPECT_EQ(LongestCommonSubstring(one, one), 1u);
  EXPECT_EQ(LongestCommonSubstring(std::vector<int>{1, 2, 3}, std::vector<int>{3, 2, 1}), 1u);
}

const char* kBottle = R"(Move_to(left, bottle)
Grasp(left, bottle)
Move_to(right, bottle_cap)
for _ in range(3):
    Grasp(right, bottle_cap)
    Twist(right, counterclockwise, 180)
    Release(right)
    Twist(right, clockwise, 180)
)";

TEST(ParsePlan, ExpandsLoopsAndRecordsGroups) {
  const PlanParseResult r = ParsePlan(kBottle);
  EXPECT_TRUE(r.diagnostics.empty());
  ASSERT_EQ(r.plan.steps.size(), 3u + 4u * 3u);
  ASSERT_EQ(r.plan.repeats.size(), 1u);
  EXPECT_EQ(r.plan.repeats[0], (RepeatGroup{3, 4, 3}));
  for (std::size_t rep = 0; rep < 3; ++rep) {
    EXPECT_EQ(r.plan.steps[3 + rep * 4 + 1].skill, Skill::kTwist);
    EXPECT_EQ(r.plan.steps[3 + rep * 4 + 1].direction, Direction::kCounterclockwise);
    EXPECT_EQ(r.plan.steps[3 + rep * 4 + 1].magnitude_deg, 180.0);
  }
  EXPECT_EQ(RenderPlan(r.plan), kBottle);
}

TEST(ParsePlan, ToleratesModelFormatting) {
  const std::string text = R"(Here is the plan:
```python
from skills import Grasp, Move_to, Insert
1. grab(R, "Power Plug", 100)   # pick it up
2) Move_to(right_hand, Find('box'), 20);
- Insert(hand='right', target='outlet', force=100)
```
)";
  const PlanParseResult r = ParsePlan(text);
  ASSERT_EQ(r.plan.steps.size(), 3u);
  EXPECT_EQ(r.diagnostics.size(), 1u);  // the prose line
  EXPECT_EQ(r.diagnostics[0].line, 1u);
  EXPECT_EQ(r.plan.steps[0].skill, Skill::kGrasp);
  EXPECT_EQ(r.plan.steps[0].hand, Hand::kRight);
  EXPECT_EQ(r.plan.steps[0].object, "power_plug");
  EXPECT_EQ(r.plan.steps[1].object, "box");
  EXPECT_EQ(r.plan.steps[1].force, 20);
  EXPECT_EQ(r.plan.steps[2].object, "outlet");

  const ActionPlan gt = ParsePlan(ReadTextFile(DataDir() / "corpus" / "video_03" / "plan.txt")).plan;
  EXPECT_TRUE(ExactMatch(r.plan, gt));
  EXPECT_EQ(Similarity(r.plan, gt), 1.0);
}

TEST(ParsePlan, BadLinesBecomeDiagnostics) {
  const PlanParseResult r = ParsePlan(
      "Press(right, cube, 30)\n"
      "Dance(right)\n"
      "Press(right, cube, 130)\n"
      "Twist(right, sideways, 90)\n"
      "Release()\n"
      "Release(right, cube)\n"
      "Move_to(right, Rotate(cube))\n");
  EXPECT_EQ(r.plan.steps.size(), 1u);
  ASSERT_EQ(r.diagnostics.size(), 6u);
  EXPECT_EQ(r.diagnostics[0].line, 2u);
  EXPECT_NE(r.diagnostics[0].message.find("unknown skill"), std::string::npos);
  EXPECT_NE(r.diagnostics[1].message.find("force"), std::string::npos);
  EXPECT_NE(r.diagnostics[2].message.find("direction"), std::string::npos);
  EXPECT_NE(r.diagnostics[3].message.find("missing hand"), std::string::npos);
  EXPECT_NE(r.diagnostics[4].message.find("too many"), std::string::npos);
  EXPECT_NE(r.diagnostics[5].message.find("nested call"), std::string::npos);
}

TEST(ParsePlan, NoStepsThrows) {
  EXPECT_THROW(ParsePlan("I cannot help with that."), PlanParseError);
  EXPECT_THROW(ParsePlan(""), PlanParseError);
  try {
    ParsePlan("hello\nworld\n");
  } catch (const PlanParseError& e) {
    EXPECT_EQ(e.diagnostics().size(), 2u);
  }
}

TEST(ParsePlan, ZeroCountLoopDropsBody) {
  const PlanParseResult r = ParsePlan("Release(left)\nfor _ in range(0):\n    Hit(drum, 10)\nRelease(right)\n");
  ASSERT_EQ(r.plan.steps.size(), 2u);
  EXPECT_TRUE(r.plan.repeats.empty());
}

const std::vector<std::string> kObjects = {"cube", "bottle_cap", "power_strip", "box", "drum"};

ActionStep RandomStep(std::mt19937_64& rng) {
  static const std::vector<Skill> kSkills = {Skill::kGrasp,       Skill::kRelease, Skill::kTwist,
                                             Skill::kMoveTo,      Skill::kInsert,  Skill::kPushTowards,
                                             Skill::kHit,         Skill::kPress,   Skill::kWipe};
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  ActionStep s;
  s.skill = kSkills[pick(kSkills.size())];
  const SkillSignature* sig = SkillRegistry::Default().Lookup(s.skill);
  const std::size_t arity = sig->MinArity() + pick(sig->optional.size() + 1);
  for (std::size_t p = 0; p < arity; ++p) {
    switch (sig->RoleAt(p)) {
      case ParamRole::kHand: s.hand = pick(2) ? Hand::kLeft : Hand::kRight; break;
      case ParamRole::kObject:
        // An optional object may be skipped while a later force is given.
        if (p >= sig->MinArity() && arity > p + 1 && pick(2)) break;
        [[fallthrough]];
      case ParamRole::kTarget: s.object = kObjects[pick(kObjects.size())]; break;
      case ParamRole::kDirection: s.direction = static_cast<Direction>(pick(5)); break;
      case ParamRole::kDegrees: s.magnitude_deg = pick(2) ? 22.5 * double(1 + pick(16)) : double(1 + pick(720)); break;
      case ParamRole::kForce: s.force = static_cast<int>(pick(101)); break;
    }
  }
  return s;
}

ActionPlan RandomPlan(std::mt19937_64& rng) {
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  ActionPlan plan;
  const std::size_t blocks = 1 + pick(6);
  for (std::size_t b = 0; b < blocks; ++b) {
    if (pick(3) == 0) {
      const std::size_t len = 1 + pick(3);
      const std::size_t count = 1 + pick(4);
      std::vector<ActionStep> body;
      for (std::size_t i = 0; i < len; ++i) body.push_back(RandomStep(rng));
      plan.repeats.push_back({plan.steps.size(), len, count});
      for (std::size_t c = 0; c < count; ++c) plan.steps.insert(plan.steps.end(), body.begin(), body.end());
    } else {
      plan.steps.push_back(RandomStep(rng));
    }
  }
  return plan;
}

TEST(RenderPlan, ParseRenderFixedPoint) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const ActionPlan plan = RandomPlan(rng);
    const std::string text = RenderPlan(plan);
    const PlanParseResult r = ParsePlan(text);
    ASSERT_TRUE(r.diagnostics.empty()) << text << r.diagnostics[0].message;
    ASSERT_EQ(r.plan, plan) << text;
    ASSERT_EQ(RenderPlan(r.plan), text);
  }
}

TEST(Canonicalize, SixTokensPerStep) {
  const ActionPlan p = ParsePlan("Grasp(right)\nTwist(l, ccw, 90)\nHit(drum_head, 40)\n").plan;
  EXPECT_EQ(Canonicalize(p),
            (std::vector<std::string>{"grasp", "right", "_", "_", "_", "_",                 //
                                      "twist", "left", "_", "counterclockwise", "90", "_",  //
                                      "hit", "_", "drum", "_", "_", "40"}));
}

TEST(Similarity, HandComputedValues) {
  const ActionPlan gt = ParsePlan("Move_to(right, cube)\nPress(right, cube, 30)\nPress(right, cube, 90)\n").plan;
  // 18 ground-truth tokens.
  const ActionPlan first_two = ParsePlan("Move_to(right, cube)\nPress(right, cube, 30)\n").plan;
  EXPECT_DOUBLE_EQ(Similarity(first_two, gt), 12.0 / 18.0);
  // Force differs in the middle step: 6 + 5 tokens run, then a break.
  const ActionPlan wrong_force =
      ParsePlan("Move_to(right, cube)\nPress(right, cube, 50)\nPress(right, cube, 90)\n").plan;
  EXPECT_DOUBLE_EQ(Similarity(wrong_force, gt), 11.0 / 18.0);
  EXPECT_FALSE(ExactMatch(wrong_force, gt));
  // Extra prefix steps do not hurt the common run.
  const ActionPlan padded = ParsePlan("Release(left)\nMove_to(right, block)\nPress(right, cube, 30)\n"
                                      "Press(right, cube, 90)\n").plan;
  EXPECT_DOUBLE_EQ(Similarity(padded, gt), 1.0);
  EXPECT_FALSE(ExactMatch(padded, gt));
  EXPECT_THROW(Similarity(gt, ActionPlan{}), std::invalid_argument);
}

TEST(Similarity, BoundsAndExactMatchProperty) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const ActionPlan a = RandomPlan(rng);
    const ActionPlan b = trial % 5 == 0 ? a : RandomPlan(rng);
    const double s = Similarity(a, b);
    EXPECT_GE(s, 0.0);
    EXPECT_LE(s, 1.0);
    if (ExactMatch(a, b)) {
      EXPECT_EQ(s, 1.0);
    }
    EXPECT_EQ(Similarity(a, a), 1.0);
    // Reference: cubic scan over the canonical token streams.
    std::map<std::string, int> ids;
    auto encode = [&](const ActionPlan& p) {
      std::vector<int> out;
      for (const auto& t : Canonicalize(p)) out.push_back(ids.emplace(t, int(ids.size())).first->second);
      return out;
    };
    const auto ea = encode(a);
    const auto eb = encode(b);
    EXPECT_DOUBLE_EQ(s, double(CubicLongestRun(ea, eb)) / double(eb.size()));
  }
}

TEST(AliasTable, NormalizesAndResolves) {
  EXPECT_EQ(NormalizeName("  Power-Strip "), "power_strip");
  EXPECT_EQ(NormalizeName("'Bottle  Cap'"), "bottle_cap");
  EXPECT_EQ(NormalizeName("__x__"), "x");
  const AliasTable& t = AliasTable::Builtin();
  EXPECT_GE(t.version(), 1);
  EXPECT_EQ(t.Resolve(AliasCategory::kObject, "Socket"), "power_strip");
  EXPECT_EQ(t.Resolve(AliasCategory::kDirection, "anti-clockwise"), "counterclockwise");
  EXPECT_EQ(t.Resolve(AliasCategory::kObject, "Mystery Box"), "mystery_box");
  EXPECT_EQ(AliasTable::Load(std::filesystem::path(MODALCHAIN_TEST_DATA) / ".." / ".." / "data" / "aliases.json"), t);
}

TEST(AliasTable, CustomTableChangesCanonicalForm) {
  const AliasTable custom = AliasTable::FromJson(Json::parse(R"({"version": 2, "objects": {"tin": "can"}})"));
  const ActionPlan a = ParsePlan("Grasp(left, tin)\n", custom).plan;
  const ActionPlan b = ParsePlan("Grasp(left, can)\n", custom).plan;
  EXPECT_TRUE(ExactMatch(a, b, custom));
  EXPECT_FALSE(ExactMatch(a, b));
  EXPECT_THROW(AliasTable::FromJson(Json::parse(R"({"objects": {}})")), SchemaError);
}

TEST(PlanObjects, FirstSeenOrder) {
  const ActionPlan p = ParsePlan(ReadTextFile(DataDir() / "corpus" / "video_03" / "plan.txt")).plan;
  EXPECT_EQ(PlanObjects(p), (std::vector<std::string>{"plug", "box", "power_strip"}));
}

}  // namespace
}  // namespace modalchain
