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

// Acceptance suite: one PASS/FAIL line per criterion; exit status is
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "modalchain/backend.hpp"
#include "modalchain/demo.hpp"
#include "modalchain/eval.hpp"
#include "modalchain/interpreter.hpp"
#include "modalchain/orchestrator.hpp"
#include "modalchain/pipeline.hpp"
#include "modalchain/plan.hpp"
#include "modalchain/program.hpp"
#include "modalchain/prompt.hpp"
#include "modalchain/report.hpp"
#include "modalchain/task.hpp"
#include "test_util.hpp"

namespace mc = modalchain;
namespace fs = std::filesystem;
using mc::testing::DataDir;
using mc::testing::TempDir;

namespace {

// Thrown by Require; the message becomes the FAIL reason.
struct Unmet : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void Require(bool cond, const std::string& what) {
  if (!cond) throw Unmet(what);
}

const std::vector<std::string> kVideos = {"video_01", "video_02", "video_03", "video_04"};

mc::MultimodalDemo Demo(const std::string& id) { return mc::LoadRecording(DataDir() / "corpus" / id / "demo.json"); }
mc::TaskSpec Task(const std::string& id) { return mc::LoadTaskSpec(DataDir() / "corpus" / id / "task.json"); }
mc::ActionPlan GroundTruth(const std::string& id) {
  return mc::ParsePlan(mc::ReadTextFile(DataDir() / "corpus" / id / "plan.txt")).plan;
}
const mc::PromptConfig& Prompt() {
  static const mc::PromptConfig p = mc::PromptConfig::Load(DataDir() / "prompt" / "prompt.json");
  return p;
}
std::string Response(const std::string& id, const std::string& file) {
  return mc::ReadTextFile(DataDir() / "mock" / "responses" / id / file);
}

// ---- 1. signal oracles ----------------------------------------------------

// Bins each sample into frame floor(j * fr / sr) and folds.
std::vector<double> EmgOracle(const mc::RawEmgTrace& emg, long long fr, std::size_t frames) {
  const auto sr = static_cast<long long>(emg.sample_rate_hz);
  std::vector<double> out(frames, 0.0);
  std::vector<bool> seen(frames, false);
  for (std::size_t j = 0; j < emg.SampleCount(); ++j) {
    const auto f = static_cast<std::size_t>(static_cast<long long>(j) * fr / sr);
    if (f >= frames) continue;
    for (const auto& ch : emg.channels) {
      if (!seen[f] || ch[j] > out[f]) out[f] = ch[j];
      seen[f] = true;
    }
  }
  return out;
}

std::vector<double> RmsOracle(const mc::RawAudioTrace& audio, long long fr, std::size_t frames) {
  const auto sr = static_cast<long long>(audio.sample_rate_hz);
  std::vector<long double> sum(frames, 0);
  std::vector<std::size_t> n(frames, 0);
  for (std::size_t j = 0; j < audio.samples.size(); ++j) {
    const auto f = static_cast<std::size_t>(static_cast<long long>(j) * fr / sr);
    if (f >= frames) continue;
    sum[f] += static_cast<long double>(audio.samples[j]) * audio.samples[j];
    ++n[f];
  }
  std::vector<double> out(frames, 0.0);
  for (std::size_t f = 0; f < frames; ++f) {
    if (n[f]) out[f] = static_cast<double>(std::sqrt(sum[f] / n[f]));
  }
  return out;
}

std::string SignalOracles() {
  std::mt19937_64 rng(20260101);
  std::uniform_int_distribution<std::size_t> frames_d(60, 300);
  std::uniform_real_distribution<double> emg_v(0.0, 1.0);
  std::uniform_real_distribution<double> audio_v(-1.0, 1.0);
  const long long audio_rates[] = {8000, 16000, 22050, 44100};
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t frames = frames_d(rng);
    mc::RawEmgTrace emg;
    emg.sample_rate_hz = 200.0;
    const std::size_t samples = (frames * 200 + 59) / 60;
    for (auto& ch : emg.channels) {
      ch.resize(samples);
      for (double& x : ch) x = emg_v(rng);
    }
    Require(mc::EmgToForce(emg, 60.0, frames).values == EmgOracle(emg, 60, frames),
            "emg trial " + std::to_string(trial));

    mc::RawAudioTrace audio;
    const long long rate = audio_rates[trial % 4];
    audio.sample_rate_hz = static_cast<double>(rate);
    audio.samples.resize(static_cast<std::size_t>((static_cast<long long>(frames) * rate + 59) / 60));
    for (double& x : audio.samples) x = audio_v(rng);
    const auto got = mc::AudioToForce(audio, 60.0, frames).values;
    const auto want = RmsOracle(audio, 60, frames);
    Require(got.size() == want.size(), "audio size, trial " + std::to_string(trial));
    for (std::size_t i = 0; i < got.size(); ++i) {
      Require(std::abs(got[i] - want[i]) <= 1e-9 * std::max(std::abs(want[i]), 1e-300),
              "audio trial " + std::to_string(trial) + " frame " + std::to_string(i));
    }
  }
  return "100 recordings, 8-channel EMG and RMS audio match";
}

// ---- 2. metric oracle -----------------------------------------------------

// Full O(n*m) table of common-suffix lengths.
std::size_t LongestCommonSubstringOracle(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::vector<std::size_t>> t(a.size() + 1, std::vector<std::size_t>(b.size() + 1, 0));
  std::size_t best = 0;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      if (a[i - 1] == b[j - 1]) best = std::max(best, t[i][j] = t[i - 1][j - 1] + 1);
    }
  }
  return best;
}

std::string RandomPlanText(std::mt19937_64& rng) {
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  const char* hands[] = {"left", "right"};
  const char* objects[] = {"cube", "drum", "bottle_cap", "box"};
  const char* dirs[] = {"clockwise", "counterclockwise"};
  const int forces[] = {20, 30, 80, 100};
  std::string out;
  const std::size_t steps = 1 + pick(8);
  for (std::size_t i = 0; i < steps; ++i) {
    switch (pick(6)) {
      case 0: out += std::string("Grasp(") + hands[pick(2)] + ", " + objects[pick(4)] + ")\n"; break;
      case 1: out += std::string("Release(") + hands[pick(2)] + ")\n"; break;
      case 2: out += std::string("Twist(") + hands[pick(2)] + ", " + dirs[pick(2)] + ", 180)\n"; break;
      case 3: out += std::string("Move_to(") + hands[pick(2)] + ", " + objects[pick(4)] + ")\n"; break;
      case 4: out += std::string("Hit(drum, ") + std::to_string(forces[pick(4)]) + ")\n"; break;
      default:
        out += std::string("Press(") + hands[pick(2)] + ", cube, " + std::to_string(forces[pick(4)]) + ")\n";
    }
  }
  return out;
}

std::string MetricOracle() {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const mc::ActionPlan pred = mc::ParsePlan(RandomPlanText(rng)).plan;
    const mc::ActionPlan gt = mc::ParsePlan(RandomPlanText(rng)).plan;
    const auto tp = mc::Canonicalize(pred);
    const auto tg = mc::Canonicalize(gt);
    const double want = static_cast<double>(LongestCommonSubstringOracle(tp, tg)) / static_cast<double>(tg.size());
    Require(mc::Similarity(pred, gt) == want, "instance " + std::to_string(trial));
  }
  for (const auto& id : kVideos) {
    const mc::ActionPlan gt = GroundTruth(id);
    Require(mc::Similarity(gt, gt) == 1.0, id + " self-similarity");
    const mc::ActionPlan reparsed = mc::ParsePlan(mc::RenderPlan(gt)).plan;
    Require(mc::ExactMatch(reparsed, gt) && mc::Similarity(reparsed, gt) == 1.0, id + " exact match");
  }
  return "200 instances exact; corpus self-similarity 1.0";
}

// ---- 3. reference listings ------------------------------------------------

const char* kBottleListing = R"(from skills import Grasp, Release, Twist, Find, Move_to
# Based on video analysis and APIs, generate python code:
Move_to('left', Find('bottle'))
Grasp('left')
Move_to('right', Find('bottle_cap'))
for _ in range(3):
    Grasp('right')
    Twist('right', 'counterclockwise', 180)
    Release('right')
    Twist('right', 'clockwise', 180)
)";

const char* kPlugListing = R"(from skills import Grasp, Push_towards, Insert
Grasp('right', 'plug', 100) # force range from [0, 100]
Move_to('right', 'box', 20) # rotate plug in-hand
Insert('right', 'power_strip', 100)
)";

std::string ListingRoundTrip() {
  const mc::ProgramAst bottle = mc::ParseProgram(kBottleListing);
  Require(mc::Validate(bottle).empty(), "bottle listing has diagnostics");
  const mc::TaskSpec bottle_task = Task("video_02");
  mc::WorldState w = bottle_task.initial;
  const mc::EventTrace bt = mc::Interpret(bottle, w, {}, "opening_bottle");
  Require(bt.FirstFailure() == nullptr, "bottle trace has a failed call");
  double held_cap_rotation = 0;
  for (const mc::Event& e : bt.events()) {
    if (e.ok && e.skill == mc::Skill::kTwist && e.held_object == "bottle_cap") held_cap_rotation += e.rotation_deg;
  }
  Require(held_cap_rotation == 540.0, "held-cap rotation " + std::to_string(held_cap_rotation));
  Require(mc::CheckSuccess(bottle_task, bt, w).success, "bottle task not solved");

  const mc::ProgramAst plug = mc::ParseProgram(kPlugListing);
  Require(mc::Validate(plug).empty(), "plug listing has diagnostics");
  const mc::TaskSpec plug_task = Task("video_03");
  mc::WorldState p = plug_task.initial;
  const mc::EventTrace pt = mc::Interpret(plug, p, {}, "inserting_plug");
  std::vector<int> forces;
  for (const mc::Event& e : pt.events()) forces.push_back(e.applied_force.value_or(-1));
  Require(forces == std::vector<int>{100, 20, 100}, "plug forces differ");
  const mc::Event& insert = pt.events().back();
  Require(insert.ok && insert.skill == mc::Skill::kInsert && insert.applied_force == 100, "insert failed");
  Require(p.objects.at("plug").inserted && p.objects.at("plug").insert_target == "power_strip", "plug not seated");
  Require(mc::CheckSuccess(plug_task, pt, p).success, "plug task not solved");
  return "bottle 540 deg ccw on held cap; plug forces [100, 20, 100], inserted at 100";
}

// ---- 4. strategy contracts ------------------------------------------------

std::vector<mc::TranscriptEntry> RecordStrategy(const mc::Strategy& s, std::vector<std::string> responses,
                                                const fs::path& file) {
  mc::ScriptedBackend backend(mc::BackendSettings{}, std::move(responses));
  backend.AttachTranscript(std::make_shared<mc::Transcript>(file));
  mc::RunStrategy(s, Demo("video_01"), Prompt(), backend);
  return mc::Transcript::Load(file);
}

// Messages after the worked example (the first assistant turn).
std::vector<mc::Message> QueryMessages(const mc::Conversation& c) {
  std::size_t i = 0;
  while (i < c.size() && c[i].role != mc::Role::kAssistant) ++i;
  return {c.begin() + static_cast<std::ptrdiff_t>(std::min(i + 1, c.size())), c.end()};
}

std::vector<mc::Modality> ModalityRuns(const std::vector<mc::Message>& messages) {
  std::vector<mc::Modality> out;
  for (const mc::Message& m : messages) {
    for (const mc::Part& p : m.parts) {
      if (p.modality && (out.empty() || out.back() != *p.modality)) out.push_back(*p.modality);
    }
  }
  return out;
}

bool HasForceSeries(const mc::Conversation& c) {
  for (const mc::Message& m : QueryMessages(c)) {
    for (const mc::Part& p : m.parts) {
      if (p.IsSeries() || p.modality == mc::Modality::kForce) return true;
    }
  }
  return false;
}

std::string StrategyContracts() {
  using mc::Modality;
  using mc::StrategyKind;
  TempDir tmp;
  const std::vector<std::string> stages = {Response("video_01", "stage1.txt"), Response("video_01", "stage2.txt"),
                                           Response("video_01", "stage3.txt")};
  const auto chain = RecordStrategy({StrategyKind::kChain, mc::ModalitySet::All()}, stages, tmp / "com.jsonl");
  Require(chain.size() == 3, "CoM issued " + std::to_string(chain.size()) + " queries");
  const std::vector<Modality> order = {Modality::kForce, Modality::kHand, Modality::kImage};
  for (std::size_t k = 0; k < 3; ++k) {
    const mc::Conversation c = mc::ConversationFromJson(chain[k].request);
    const auto query = QueryMessages(c);
    Require(!query.empty() && ModalityRuns({query.back()}) == std::vector<Modality>{order[k]},
            "CoM stage " + std::to_string(k + 1) + " modality");
    const std::string text = mc::RenderConversation(c);
    for (std::size_t j = 0; j < k; ++j) {
      Require(text.find(stages[j]) != std::string::npos,
              "CoM stage " + std::to_string(k + 1) + " lacks answer " + std::to_string(j + 1));
    }
  }

  const std::string combined = Response("video_01", "combined.txt");
  for (StrategyKind kind : {StrategyKind::kMerged, StrategyKind::kMergSep, StrategyKind::kSepMerg,
                            StrategyKind::kSepSep}) {
    const std::string name(mc::StrategyName(kind));
    const auto log = RecordStrategy({kind, mc::ModalitySet::All()}, {combined}, tmp / (name + ".jsonl"));
    Require(log.size() == 1, name + " issued " + std::to_string(log.size()) + " queries");
    const auto runs = ModalityRuns(QueryMessages(mc::ConversationFromJson(log[0].request)));
    const bool interleaved = kind == StrategyKind::kMerged || kind == StrategyKind::kMergSep;
    if (interleaved) {
      Require(runs.size() > 3, name + " is not interleaved");
      for (std::size_t i = 0; i < runs.size(); ++i) Require(runs[i] == order[i % 3], name + " interleave order");
    } else {
      Require(runs == order, name + " is not grouped by modality");
    }
  }

  Require(HasForceSeries(mc::ConversationFromJson(chain[0].request)), "full CoM run sends no force data");
  const auto wo = mc::ParseAblation("wo-force");
  Require(wo.has_value(), "wo-force ablation unknown");
  for (StrategyKind kind : {StrategyKind::kChain, StrategyKind::kMerged, StrategyKind::kSepSep}) {
    const std::string name(mc::StrategyName(kind));
    const std::vector<std::string> replies =
        kind == StrategyKind::kChain ? std::vector<std::string>{stages[1], stages[2]} : std::vector{combined};
    for (const auto& e : RecordStrategy({kind, *wo}, replies, tmp / (name + "_wo.jsonl"))) {
      Require(!HasForceSeries(mc::ConversationFromJson(e.request)), name + " w.o. force sends force data");
    }
  }
  return "CoM 3 queries F->H->I with prior answers; 4 single-query layouts; w.o. force clean";
}

// ---- 5. trial averaging ---------------------------------------------------

std::string TrialAveraging() {
  TempDir tmp;
  fs::create_directories(tmp / "corpus");
  fs::copy(DataDir() / "corpus" / "video_01", tmp / "corpus" / "video_01", fs::copy_options::recursive);
  mc::EvalConfig config;
  config.corpus_dir = tmp / "corpus";
  config.prompt_config = DataDir() / "prompt" / "prompt.json";
  config.strategies = {mc::StrategyKind::kMerged};
  config.backend.kind = mc::BackendKind::kMock;
  config.backend.rules = "unused";
  config.trials = 3;
  config.output_dir = tmp / "out";
  const std::string right = Response("video_01", "combined.txt");
  const std::string wrong = "Plan:\nMove_to(right, cube)\nPress(right, cube, 90)\nPress(right, cube, 30)\n";
  mc::ScriptedBackend backend(mc::BackendSettings{}, {right, wrong, right});
  const mc::MetricsTable table = mc::RunEval(config, backend);
  Require(table.rows.size() == 1, "expected one row");
  std::vector<bool> matches;
  for (const auto& t : table.rows[0].trials) matches.push_back(t.outcome.metrics.exact_match);
  Require(matches == std::vector<bool>{true, false, true}, "per-trial matches are not {1,0,1}");
  const mc::MetricsTable reread = mc::ParseJsonReport(mc::EmitJson(table));
  const double acc = reread.rows[0].mean_accuracy;
  Require(std::abs(acc - 0.6667) <= 1e-4 && std::abs(acc - 2.0 / 3.0) <= 1e-9, "accuracy " + std::to_string(acc));
  Require(mc::EmitCsv(table).find(",0.6667,") != std::string::npos, "CSV does not show 0.6667");
  return "matches {1,0,1} -> mean accuracy 0.6667";
}

// ---- 6. end-to-end replay -------------------------------------------------

std::string EndToEnd() {
  TempDir tmp;
  std::string first_json;
  for (int run = 0; run < 2; ++run) {
    mc::EvalConfig config = mc::EvalConfig::Load(DataDir() / "eval_replay.json");
    config.output_dir = tmp / ("eval" + std::to_string(run));
    const mc::MetricsTable table = mc::RunEval(config);
    Require(table.rows.size() == 4, "expected 4 task rows");
    for (const auto& row : table.rows) {
      Require(row.mean_accuracy == 1.0, row.task + " accuracy " + std::to_string(row.mean_accuracy) +
                                            (row.notes.empty() ? "" : " (" + row.notes.front() + ")"));
    }
    mc::WriteReports(table, config.output_dir);
    const std::string json = mc::ReadTextFile(config.output_dir / "metrics.json");
    if (run == 0) first_json = json;
    Require(json == first_json, "metrics.json differs between runs");
  }
  Require(mc::ReadTextFile(tmp / "eval0" / "metrics.csv") == mc::ReadTextFile(tmp / "eval1" / "metrics.csv"),
          "metrics.csv differs between runs");

  const mc::EvalConfig config = mc::EvalConfig::Load(DataDir() / "eval_replay.json");
  const std::string api = mc::ReadTextFile(config.api_description);
  for (const auto& id : kVideos) {
    std::string first;
    for (int run = 0; run < 2; ++run) {
      auto backend = mc::ReplayBackend::FromFiles(config.backend.settings, config.backend.transcripts);
      mc::PipelineOptions options;
      options.output_dir = tmp / ("pipe" + std::to_string(run)) / id;
      const mc::PipelineReport r = mc::RunPipeline(Demo(id), Task(id), Prompt(), api, *backend, options);
      Require(r.failed_stage().empty(), id + " failed at " + r.failed_stage());
      Require(r.analysis && r.analysis->plan && mc::ExactMatch(*r.analysis->plan, GroundTruth(id)),
              id + " plan differs from ground truth");
      Require(r.diagnostics.empty(), id + " program has diagnostics");
      Require(r.success(), id + " verdict: " + (r.verdict ? r.verdict->Summary() : "none"));
      const std::string report = mc::ReadTextFile(*options.output_dir / "report.json");
      if (run == 0) first = report;
      Require(report == first, id + " report.json differs between runs");
    }
  }
  return "4 tasks: accuracy 1.0, programs valid, verdicts true, reports byte-identical";
}

// ---- 7. sandbox safety ----------------------------------------------------

std::string SandboxSafety() {
  TempDir tmp;
  const std::string sentinel = (tmp / "pwned").string();
  const std::vector<std::string> hostile = {
      "import os\nos.system('touch " + sentinel + "')\n",
      "import subprocess\nsubprocess.run(['touch', '" + sentinel + "'])\n",
      "from os import system\nsystem('touch " + sentinel + "')\n",
      "__import__('os').system('touch " + sentinel + "')\n",
      "open('" + sentinel + "', 'w')\n",
      "exec(\"open('" + sentinel + "', 'w')\")\n",
      "eval('1')\n",
      "Grasp('left', 'cube', 10 + 5)\n",
      "Press('right', 'cube', 2 * 50)\n",
      "Press('right', 'cube', -5)\n",
      "Grasp('left').__class__\n",
      "Find('cube').position\n",
      "x = Find('cube')\n",
      "while True:\n    Hit('drum', 10)\n",
      "for _ in range(10**9):\n    Hit('drum', 10)\n",
      "for _ in range(1000000000):\n    Hit('drum', 10)\n",
      "for _ in range(1000):\n    for _ in range(1000):\n        Hit('drum', 10)\n",
      "for _ in range(1001):\n    Hit('drum', 10)\n",
      "def f():\n    Hit('drum', 10)\n",
      "print('hello')\n",
      "Hit('drum', 30); import os\n",
  };
  const mc::TaskSpec drum = Task("video_04");
  std::size_t parse_rejected = 0;
  std::size_t bounded = 0;
  for (std::size_t i = 0; i < hostile.size(); ++i) {
    const std::string tag = "hostile program " + std::to_string(i + 1);
    mc::ProgramAst ast;
    try {
      ast = mc::ParseProgram(hostile[i]);
    } catch (const mc::ProgramError&) {
      ++parse_rejected;
      continue;
    }
    Require(!mc::Validate(ast).empty(), tag + " validated cleanly");
    mc::WorldState world = drum.initial;
    bool refused = false;
    try {
      mc::Interpret(ast, world, {}, "playing_drum");
    } catch (const mc::InvalidProgram&) {
      refused = true;
    }
    Require(refused, tag + " was interpreted");
    Require(world == drum.initial, tag + " changed the world");
    ++bounded;
  }
  Require(!fs::exists(sentinel), "sentinel file was created");
  return std::to_string(parse_rejected) + " rejected at parse, " + std::to_string(bounded) +
         " refused by validation; no side effects";
}

// ---- 8. prompt leakage ----------------------------------------------------

std::string PromptLeakage() {
  const mc::Conversation prompt = mc::BuildPrompt(Prompt());
  std::size_t checked = 0;
  for (const auto& entry : mc::LoadCorpus(DataDir() / "corpus")) {
    const auto leaks = mc::FindPromptLeaks(prompt, entry.ground_truth, Prompt().example_objects);
    Require(leaks.empty(), entry.name + ": " + (leaks.empty() ? "" : leaks.front()));
    ++checked;
  }
  Require(checked == kVideos.size(), "corpus size " + std::to_string(checked));
  return "system and example prompt clean for " + std::to_string(checked) + " recordings";
}

struct Criterion {
  const char* name;
  std::function<std::string()> run;
  double limit_s;  // 0 = untimed
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"signal oracle equivalence", SignalOracles, 10.0},
      {"metric oracle equivalence", MetricOracle, 5.0},
      {"reference listing round trip", ListingRoundTrip, 0.0},
      {"strategy contract suite", StrategyContracts, 0.0},
      {"trial averaging", TrialAveraging, 0.0},
      {"end-to-end fixture run", EndToEnd, 30.0},
      {"sandbox safety", SandboxSafety, 0.0},
      {"prompt leakage guard", PromptLeakage, 0.0},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Criterion& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = c.run();
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && c.limit_s > 0 && secs >= c.limit_s) {
      ok = false;
      detail += " (over the " + std::to_string(static_cast<int>(c.limit_s)) + " s limit)";
    }
    std::ostringstream time;
    time.precision(2);
    time << std::fixed << secs;
    std::cout << (ok ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << c.name << " [" << time.str() << " s]: " << detail
              << "\n";
    failures += ok ? 0 : 1;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size()
            << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
