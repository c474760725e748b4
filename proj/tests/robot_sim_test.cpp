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

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "modalchain/interpreter.hpp"
#include "modalchain/task.hpp"
#include "modalchain/world.hpp"
#include "test_util.hpp"

namespace modalchain {
namespace {

using testing::DataDir;

TaskSpec Task(const std::string& id) { return LoadTaskSpec(DataDir() / "corpus" / id / "task.json"); }
TaskSpec Wiping() { return LoadTaskSpec(DataDir() / "tasks" / "wiping_board.json"); }

SkillCall MakeCall(Skill skill, std::optional<Hand> hand, std::optional<std::string> object = std::nullopt,
                   std::optional<int> force = std::nullopt) {
  SkillCall c;
  c.skill = skill;
  c.hand = hand;
  c.object = std::move(object);
  c.force = force;
  c.text = std::string(SkillName(skill));
  return c;
}

SkillCall TwistCall(Hand hand, Direction d, long long degrees) {
  SkillCall c = MakeCall(Skill::kTwist, hand);
  c.direction = d;
  c.degrees = degrees;
  return c;
}

struct RunResult {
  EventTrace trace;
  WorldState world;
};

RunResult RunProgram(const TaskSpec& spec, const std::string& source) {
  RunResult r;
  r.world = spec.initial;
  r.trace = Interpret(ParseProgram(source), r.world, {}, std::string(TaskIdName(spec.task)));
  return r;
}

bool Near(const Vec3& a, const Vec3& b) { return Distance(a, b) < 1e-9; }

TEST(Grasp, ReachAndDefaults) {
  WorldState w = Task("video_03").initial;
  const WorldState before = w;
  Event far = ApplySkill(w, MakeCall(Skill::kGrasp, Hand::kLeft, "plug"));
  EXPECT_FALSE(far.ok);
  EXPECT_EQ(far.reason, "plug out of reach");
  EXPECT_TRUE(far.deltas.empty());
  EXPECT_EQ(w, before);

  Event ok = ApplySkill(w, MakeCall(Skill::kGrasp, Hand::kRight, "power_plug"));
  ASSERT_TRUE(ok.ok) << ok.reason;
  EXPECT_EQ(ok.target, "plug");
  EXPECT_EQ(ok.applied_force, 100);
  EXPECT_EQ(w.gripper(Hand::kRight).held, "plug");
  EXPECT_EQ(w.objects.at("plug").attached_to, Hand::kRight);
  EXPECT_FALSE(ok.deltas.empty());

  Event again = ApplySkill(w, MakeCall(Skill::kGrasp, Hand::kRight, "plug"));
  EXPECT_EQ(again.reason, "hand already holding plug");
}

TEST(Grasp, TargetlessPicksNearestFreeObject) {
  WorldState w = Task("video_02").initial;
  ApplySkill(w, MakeCall(Skill::kMoveTo, Hand::kRight, "bottle_cap"));
  const Event e = ApplySkill(w, MakeCall(Skill::kGrasp, Hand::kRight, std::nullopt, 40));
  ASSERT_TRUE(e.ok);
  EXPECT_EQ(e.target, "bottle_cap");
  EXPECT_EQ(w.gripper(Hand::kRight).grip_force, 40);
  // The left hand, at the same spot, finds nothing free.
  ApplySkill(w, MakeCall(Skill::kMoveTo, Hand::kLeft, "bottle_cap"));
  EXPECT_FALSE(ApplySkill(w, MakeCall(Skill::kGrasp, Hand::kLeft, "bottle_cap")).ok);
  WorldState empty = Task("video_01").initial;
  EXPECT_EQ(ApplySkill(empty, MakeCall(Skill::kGrasp, Hand::kLeft)).reason, "nothing within reach");
}

TEST(Release, EmptyHandFails) {
  WorldState w = Task("video_01").initial;
  EXPECT_EQ(ApplySkill(w, MakeCall(Skill::kRelease, Hand::kLeft)).reason, "hand empty");
}

TEST(Twist, SignAndHeldObject) {
  WorldState w = Task("video_02").initial;
  ApplySkill(w, MakeCall(Skill::kMoveTo, Hand::kRight, "bottle_cap"));
  ApplySkill(w, MakeCall(Skill::kGrasp, Hand::kRight, "bottle_cap"));
  const Event ccw = ApplySkill(w, TwistCall(Hand::kRight, Direction::kCounterclockwise, 180));
  EXPECT_EQ(ccw.rotation_deg, 180.0);
  EXPECT_EQ(ccw.held_object, "bottle_cap");
  EXPECT_EQ(w.objects.at("bottle_cap").orientation_deg, 180.0);
  EXPECT_EQ(w.gripper(Hand::kRight).wrist_deg, 180.0);
  bool saw_delta = false;
  for (const auto& d : ccw.deltas) {
    if (d.entity == "objects.bottle_cap" && d.field == "orientation_deg") {
      saw_delta = true;
      EXPECT_EQ(d.before, 0.0);
      EXPECT_EQ(d.after, 180.0);
    }
  }
  EXPECT_TRUE(saw_delta);
  ApplySkill(w, MakeCall(Skill::kRelease, Hand::kRight));
  const Event cw = ApplySkill(w, TwistCall(Hand::kRight, Direction::kClockwise, 90));
  EXPECT_EQ(cw.rotation_deg, -90.0);
  EXPECT_EQ(w.objects.at("bottle_cap").orientation_deg, 180.0);
  EXPECT_EQ(w.gripper(Hand::kRight).wrist_deg, 90.0);
  EXPECT_EQ(ApplySkill(w, TwistCall(Hand::kRight, Direction::kUp, 90)).reason, "direction is not a rotation");
}

TEST(MoveTo, FreeAndGuardedMoves) {
  WorldState w = Task("video_03").initial;
  ApplySkill(w, MakeCall(Skill::kGrasp, Hand::kRight, "plug"));
  const Event guarded = ApplySkill(w, MakeCall(Skill::kMoveTo, Hand::kRight, "box", 20));
  ASSERT_TRUE(guarded.ok);
  EXPECT_EQ(guarded.applied_force, 20);
  // Approaching along +x, the gripper stops at the box extent (0.1 m).
  EXPECT_TRUE(Near(w.gripper(Hand::kRight).position, {0.5, -0.1, 0.05}));
  EXPECT_TRUE(Near(w.objects.at("plug").position, {0.5, -0.1, 0.05}));

  ApplySkill(w, MakeCall(Skill::kMoveTo, Hand::kLeft, "box"));
  EXPECT_EQ(w.gripper(Hand::kLeft).position, w.objects.at("box").position);
  EXPECT_EQ(ApplySkill(w, MakeCall(Skill::kPushTowards, Hand::kLeft, "box")).reason, "missing force");
  EXPECT_EQ(ApplySkill(w, MakeCall(Skill::kMoveTo, Hand::kRight, "plug")).reason, "cannot move to the held object");
}

TEST(Insert, ForceThresholdAndSnap) {
  WorldState w = Task("video_03").initial;
  ApplySkill(w, MakeCall(Skill::kGrasp, Hand::kRight, "plug"));
  EXPECT_EQ(ApplySkill(w, MakeCall(Skill::kInsert, Hand::kRight, "power_strip", 100)).reason,
            "power_strip out of reach");
  ApplySkill(w, MakeCall(Skill::kMoveTo, Hand::kRight, "box", 20));
  const WorldState before = w;
  const Event weak = ApplySkill(w, MakeCall(Skill::kInsert, Hand::kRight, "power_strip", 50));
  EXPECT_EQ(weak.reason, "insufficient force (50 < 80)");
  EXPECT_EQ(w, before);
  const Event strong = ApplySkill(w, MakeCall(Skill::kInsert, Hand::kRight, "socket", 80));
  ASSERT_TRUE(strong.ok) << strong.reason;
  EXPECT_EQ(strong.applied_force, 80);
  const ObjectState& plug = w.objects.at("plug");
  EXPECT_TRUE(plug.inserted);
  EXPECT_EQ(plug.insert_target, "power_strip");
  EXPECT_EQ(plug.position, w.objects.at("power_strip").position);
  // Pulling the plug out clears the inserted flag.
  ApplySkill(w, MakeCall(Skill::kMoveTo, Hand::kRight, "box"));
  EXPECT_FALSE(w.objects.at("plug").inserted);
}

TEST(PressHitWipe, ContactRules) {
  WorldState cube = Task("video_01").initial;
  EXPECT_EQ(ApplySkill(cube, MakeCall(Skill::kPress, Hand::kRight, "cube", 30)).reason, "no contact with cube");
  ApplySkill(cube, MakeCall(Skill::kMoveTo, Hand::kRight, "block"));
  EXPECT_EQ(ApplySkill(cube, MakeCall(Skill::kPress, Hand::kRight, "cube", 30)).applied_force, 30);

  WorldState drum = Task("video_04").initial;
  const Event hit = ApplySkill(drum, MakeCall(Skill::kHit, std::nullopt, "drum_head", 55));
  EXPECT_TRUE(hit.ok);
  EXPECT_EQ(hit.target, "drum");
  EXPECT_EQ(hit.applied_force, 55);
  EXPECT_EQ(ApplySkill(drum, MakeCall(Skill::kHit, std::nullopt, "drum")).reason, "missing force");

  WorldState board = Wiping().initial;
  EXPECT_EQ(ApplySkill(board, MakeCall(Skill::kWipe, Hand::kLeft, "board")).reason, "no contact with board");
  ApplySkill(board, MakeCall(Skill::kGrasp, Hand::kRight, "sponge"));
  ApplySkill(board, MakeCall(Skill::kMoveTo, Hand::kRight, "whiteboard"));
  EXPECT_TRUE(ApplySkill(board, MakeCall(Skill::kWipe, Hand::kRight, "board")).ok);
  for (const Mark& m : board.marks) EXPECT_TRUE(m.cleared) << m.name;
}

TEST(Find, AliasesSuggestionsAndLocators) {
  const WorldState w = Task("video_03").initial;
  EXPECT_EQ(Find(w, "Socket").name, "power_strip");
  EXPECT_EQ(Find(w, "Power Strip").name, "power_strip");
  try {
    Find(w, "powr strip");
    FAIL();
  } catch (const ObjectNotFound& e) {
    EXPECT_EQ(e.name(), "powr_strip");
    EXPECT_EQ(e.suggestions(), std::vector<std::string>{"power_strip"});
    EXPECT_NE(std::string(e.what()).find("did you mean 'power_strip'"), std::string::npos);
  }
  try {
    Find(w, "zebra");
    FAIL();
  } catch (const ObjectNotFound& e) {
    EXPECT_TRUE(e.suggestions().empty());
  }

  struct Shifted : ObjectLocator {
    std::optional<Vec3> Locate(const WorldState& world, const std::string& name) const override {
      if (name == "box") return std::nullopt;  // occluded
      Vec3 p = world.objects.at(name).position;
      p.z += 1.0;
      return p;
    }
  } shifted;
  EXPECT_DOUBLE_EQ(Find(w, "plug", &shifted).position.z, 1.05);
  EXPECT_THROW(Find(w, "box", &shifted), ObjectNotFound);
}

// Random Grasp/Release/Twist/Move_to sequences with world invariants
// checked after every call.
TEST(WorldInvariants, TwistConservationAndAttachmentExclusivity) {
  std::mt19937_64 rng(31337);
  const TaskSpec spec = Task("video_02");
  const std::vector<std::string> objects = {"bottle", "bottle_cap"};
  for (int trial = 0; trial < 200; ++trial) {
    WorldState w = spec.initial;
    std::map<std::string, double> rotation_by_object;
    std::array<double, 2> rotation_by_hand = {0, 0};
    for (int step = 0; step < 40; ++step) {
      const Hand h = rng() % 2 ? Hand::kLeft : Hand::kRight;
      const std::string obj = objects[rng() % 2];
      SkillCall call;
      switch (rng() % 4) {
        case 0: call = MakeCall(Skill::kGrasp, h, rng() % 2 ? std::optional(obj) : std::nullopt); break;
        case 1: call = MakeCall(Skill::kRelease, h); break;
        case 2:
          call = TwistCall(h, rng() % 2 ? Direction::kClockwise : Direction::kCounterclockwise,
                           static_cast<long long>(1 + rng() % 360));
          break;
        default: call = MakeCall(Skill::kMoveTo, h, obj); break;
      }
      const WorldState before = w;
      const Event e = ApplySkill(w, call);
      if (!e.ok) {
        ASSERT_EQ(w, before);
        continue;
      }
      if (e.skill == Skill::kTwist) {
        rotation_by_hand[static_cast<std::size_t>(h)] += e.rotation_deg;
        if (e.held_object) rotation_by_object[*e.held_object] += e.rotation_deg;
      }
      for (const auto& [name, o] : w.objects) {
        int holders = 0;
        for (Hand g : kAllHands) holders += w.gripper(g).held == name ? 1 : 0;
        ASSERT_LE(holders, 1);
        ASSERT_EQ(o.attached_to.has_value(), holders == 1);
        if (o.attached_to) {
          ASSERT_EQ(w.gripper(*o.attached_to).held, name);
          ASSERT_EQ(o.position, w.gripper(*o.attached_to).position);
        }
      }
    }
    for (const auto& name : objects) {
      EXPECT_DOUBLE_EQ(w.objects.at(name).orientation_deg - spec.initial.objects.at(name).orientation_deg,
                       rotation_by_object[name]);
    }
    for (Hand g : kAllHands) EXPECT_DOUBLE_EQ(w.gripper(g).wrist_deg, rotation_by_hand[static_cast<std::size_t>(g)]);
  }
}

TEST(WorldJson, RoundTripAndConsistency) {
  RunResult r = RunProgram(Task("video_03"), "Grasp('right', 'plug', 100)\nMove_to('right', 'box', 20)\n");
  const Json j = WorldToJson(r.world);
  EXPECT_EQ(WorldFromJson(j), r.world);

  Json both = j;
  both["grippers"]["left"]["held"] = "plug";
  EXPECT_THROW(WorldFromJson(both), SchemaError);
  Json ghost = j;
  ghost["grippers"]["left"]["held"] = "ghost";
  EXPECT_THROW(WorldFromJson(ghost), SchemaError);
  Json caps = j;
  caps["objects"]["Box"] = caps["objects"]["box"];
  EXPECT_THROW(WorldFromJson(caps), SchemaError);
  Json bad_mark = WorldToJson(Wiping().initial);
  bad_mark["marks"][0]["on"] = "wall";
  EXPECT_THROW(WorldFromJson(bad_mark), SchemaError);
}

TEST(EventTrace, JsonlHeaderAndEvents) {
  const RunResult r = RunProgram(Task("video_01"), "Move_to('right', 'cube')\nPress('right', 'cube', 30)\nPress('left', 'cube', 5)\n");
  ASSERT_EQ(r.trace.size(), 3u);
  const std::string text = r.trace.ToJsonl();
  const std::string header = text.substr(0, text.find('\n'));
  EXPECT_EQ(Json::parse(header), Json({{"task", "pressing_cube"}}));
  const EventTrace back = EventTrace::FromJsonl(text);
  EXPECT_EQ(back, r.trace);
  EXPECT_EQ(back.ToJsonl(), text);
  ASSERT_NE(back.FirstFailure(), nullptr);
  EXPECT_EQ(back.FirstFailure()->step, 2u);
  EXPECT_THROW(EventTrace::FromJsonl("{\"task\": \"x\"}\nnot json\n"), SchemaError);
}

TEST(ForceBand, Boundaries) {
  EXPECT_EQ(ForceBandOf(0), ForceBand::kLow);
  EXPECT_EQ(ForceBandOf(33), ForceBand::kLow);
  EXPECT_EQ(ForceBandOf(34), ForceBand::kMid);
  EXPECT_EQ(ForceBandOf(66), ForceBand::kMid);
  EXPECT_EQ(ForceBandOf(67), ForceBand::kHigh);
  EXPECT_EQ(ForceBandOf(100), ForceBand::kHigh);
}

TEST(TaskSpec, JsonRoundTrip) {
  for (const TaskSpec& spec : {Task("video_01"), Task("video_02"), Task("video_03"), Task("video_04"), Wiping()}) {
    const Json j = TaskSpecToJson(spec);
    EXPECT_EQ(TaskSpecToJson(TaskSpecFromJson(j)), j);
    EXPECT_EQ(TaskSpecFromJson(j).initial, spec.initial);
  }
  Json bad = TaskSpecToJson(Task("video_01"));
  bad["task"] = "juggling";
  EXPECT_THROW(TaskSpecFromJson(bad), SchemaError);
  EXPECT_EQ(ParseTaskId("playing_drum"), TaskId::kPlayingDrum);
}

TEST(CheckSuccess, ReferenceProgramsSucceed) {
  struct Case {
    TaskSpec spec;
    std::string source;
    std::string detail;
  };
  const std::vector<Case> cases = {
      {Task("video_01"), "Move_to('right', 'cube')\nPress('right', 'cube', 30)\nPress('right', 'cube', 90)\n",
       "2 presses match the pattern"},
      {Task("video_02"),
       "Move_to('left', Find('bottle'))\nGrasp('left')\nMove_to('right', Find('bottle_cap'))\n"
       "for _ in range(3):\n    Grasp('right')\n    Twist('right', 'counterclockwise', 180)\n"
       "    Release('right')\n    Twist('right', 'clockwise', 180)\n",
       "bottle_cap rotated 540 deg counterclockwise (required 360)"},
      {Task("video_03"), "Grasp('right', 'plug', 100)\nMove_to('right', 'box', 20)\nInsert('right', 'power_strip', 100)\n",
       "insert force 100"},
      {Task("video_04"), "for _ in range(2):\n    Hit('drum', 30)\n    Hit('drum', 80)\n", "4 beats match the pattern"},
      {Wiping(), "Grasp('right', 'sponge')\nMove_to('right', 'board')\nWipe('right', 'board')\n", "2 of 2 marks cleared"},
  };
  for (const Case& c : cases) {
    const RunResult r = RunProgram(c.spec, c.source);
    const SuccessReport report = CheckSuccess(c.spec, r.trace, r.world);
    EXPECT_TRUE(report.success) << report.Summary();
    EXPECT_FALSE(report.failed_step.has_value());
    EXPECT_NE(std::find(report.details.begin(), report.details.end(), c.detail), report.details.end())
        << report.Summary();
  }
}

TEST(CheckSuccess, FailureCases) {
  auto check = [](const TaskSpec& spec, const std::string& source) {
    const RunResult r = RunProgram(spec, source);
    return CheckSuccess(spec, r.trace, r.world);
  };
  SuccessReport drum = check(Task("video_04"), "Hit('drum', 30)\nHit('drum', 80)\nHit('drum', 30)\n");
  EXPECT_FALSE(drum.success);
  EXPECT_EQ(drum.details.back(), "beat count mismatch: got 3, expected 4");

  drum = check(Task("video_04"), "for _ in range(2):\n    Hit('drum', 30)\n    Hit('drum', 55)\n");
  EXPECT_FALSE(drum.success);
  EXPECT_EQ(drum.details.size(), 2u);  // beats 2 and 4 are 25 away from 80
  drum = check(Task("video_04"), "for _ in range(2):\n    Hit('drum', 50)\n    Hit('drum', 60)\n");
  EXPECT_TRUE(drum.success) << drum.Summary();  // within +/-20 of each beat

  const SuccessReport cube =
      check(Task("video_01"), "Move_to('right', 'cube')\nPress('right', 'cube', 30)\nPress('right', 'cube', 60)\n");
  EXPECT_FALSE(cube.success);
  EXPECT_EQ(cube.details.back(), "press 2 force 60 (mid) expected high");

  const SuccessReport bottle = check(Task("video_02"),
                                     "Move_to('right', 'bottle_cap')\nGrasp('right')\nTwist('right', 'ccw', 180)\n");
  EXPECT_FALSE(bottle.success);

  const SuccessReport plug = check(Task("video_03"),
                                   "Grasp('right', 'plug', 100)\nMove_to('right', 'box', 20)\nInsert('right', 'power_strip', 60)\n");
  EXPECT_FALSE(plug.success);
  EXPECT_EQ(plug.failed_step, 2u);
  EXPECT_NE(plug.Summary().find("insufficient force (60 < 80)"), std::string::npos);

  const SuccessReport wipe = check(Wiping(), "Grasp('right', 'sponge')\n");
  EXPECT_FALSE(wipe.success);
  EXPECT_EQ(wipe.details.back(), "0 of 2 marks cleared");
}

TEST(CheckSuccess, TaskMismatch) {
  const RunResult r = RunProgram(Task("video_04"), "Hit('drum', 30)\n");
  EXPECT_THROW(CheckSuccess(Task("video_01"), r.trace, r.world), TaskMismatch);
  EventTrace anonymous;
  EXPECT_THROW(CheckSuccess(Task("video_01"), anonymous, Task("video_04").initial), TaskMismatch);
}

}  // namespace
}  // namespace modalchain
