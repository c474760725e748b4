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

#include "modalchain/orchestrator.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

#include "modalchain/skills.hpp"

namespace modalchain {

namespace {

bool SeparateAnswers(StrategyKind k) { return k == StrategyKind::kMergSep || k == StrategyKind::kSepSep; }

std::string CapitalizedModality(Modality m) {
  std::string s(ModalityName(m));
  s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

std::string RecordingHeader(const MultimodalDemo& demo) {
  return "Recording " + (demo.id.empty() ? std::string("unnamed") : demo.id) + ".";
}

std::string SingleQueryInstruction(const Strategy& s) {
  std::string out = "Analyze the recording";
  if (SeparateAnswers(s.kind)) {
    out += ". First write a separate analysis for each modality under the headings ";
    const auto mods = s.modalities.Ordered();
    for (std::size_t i = 0; i < mods.size(); ++i) {
      if (i > 0) out += i + 1 == mods.size() ? " and " : ", ";
      out += "`" + SectionHeading(mods[i]) + "`";
    }
    out += ", then write the final plan after a line `Plan:`.";
  } else {
    out += " and write the final plan after a line `Plan:`.";
  }
  return out;
}

Message ChainStageMessage(const MultimodalDemo& demo, const PromptConfig& config,
                          const std::vector<Modality>& mods, std::size_t stage) {
  const Modality m = mods[stage];
  std::string instruction = RecordingHeader(demo) + " Stage " + std::to_string(stage + 1) + " of " +
                            std::to_string(mods.size()) + ": analyze the " +
                            std::string(ModalityName(m)) + " data";
  if (stage > 0) instruction += ", refining your previous analysis";
  if (stage + 1 == mods.size()) {
    instruction += ". Then write the final plan after a line `Plan:`.";
  } else {
    instruction += ". Do not write a plan yet.";
  }
  Message msg;
  msg.role = Role::kUser;
  msg.parts.push_back(Part::Text(std::move(instruction)));
  auto data = RenderDemoParts(demo, config.keyframes, ModalitySet{m}, PartLayout::kGrouped);
  msg.parts.insert(msg.parts.end(), std::make_move_iterator(data.begin()),
                   std::make_move_iterator(data.end()));
  return msg;
}

void RequireModalities(const MultimodalDemo& demo, const ModalitySet& mods) {
  if (mods.Empty()) throw std::invalid_argument("strategy has no modalities");
  if (demo.frames.empty()) throw std::invalid_argument("demo has no frames");
  if (mods.Contains(Modality::kHand)) {
    const bool any = std::any_of(demo.frames.begin(), demo.frames.end(),
                                 [](const Frame& f) { return !f.hands.Empty(); });
    if (!any) throw std::invalid_argument("demo " + demo.id + " has no hand tracks");
  }
}

std::string_view Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string_view StrategyName(StrategyKind k) {
  switch (k) {
    case StrategyKind::kMerged: return "merged";
    case StrategyKind::kMergSep: return "merg-sep";
    case StrategyKind::kSepMerg: return "sep-merg";
    case StrategyKind::kSepSep: return "sep-sep";
    case StrategyKind::kChain: return "com";
  }
  return "?";
}

std::optional<StrategyKind> ParseStrategy(std::string_view s) {
  for (auto k : {StrategyKind::kMerged, StrategyKind::kMergSep, StrategyKind::kSepMerg,
                 StrategyKind::kSepSep, StrategyKind::kChain}) {
    if (s == StrategyName(k)) return k;
  }
  if (s == "merg") return StrategyKind::kMerged;
  if (s == "ours" || s == "chain") return StrategyKind::kChain;
  return std::nullopt;
}

std::optional<ModalitySet> ParseAblation(std::string_view s) {
  if (s == "all") return ModalitySet::All();
  if (s == "image-only") return ModalitySet{Modality::kImage};
  if (s == "wo-img" || s == "wo-image") return ModalitySet{Modality::kForce, Modality::kHand};
  if (s == "wo-force") return ModalitySet{Modality::kHand, Modality::kImage};
  if (s == "wo-hand") return ModalitySet{Modality::kForce, Modality::kImage};
  ModalitySet out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    auto end = s.find_first_of(",+", pos);
    if (end == std::string_view::npos) end = s.size();
    auto m = ParseModality(Trim(s.substr(pos, end - pos)));
    if (!m) return std::nullopt;
    out.Insert(*m);
    pos = end + 1;
  }
  if (out.Empty()) return std::nullopt;
  return out;
}

std::string AblationName(const ModalitySet& m) {
  if (m == ModalitySet::All()) return "all";
  if (m == ModalitySet{Modality::kImage}) return "image-only";
  if (m == (ModalitySet{Modality::kForce, Modality::kHand})) return "wo-img";
  if (m == (ModalitySet{Modality::kHand, Modality::kImage})) return "wo-force";
  if (m == (ModalitySet{Modality::kForce, Modality::kImage})) return "wo-hand";
  return m.Label();
}

StageError::StageError(std::size_t stage, std::optional<Modality> modality, const BackendError& cause)
    : std::runtime_error("stage " + std::to_string(stage) +
                         (modality ? " (" + std::string(ModalityName(*modality)) + ")" : std::string()) +
                         ": " + std::string(BackendErrorKindName(cause.kind())) + ": " + cause.what()),
      stage_(stage),
      modality_(modality),
      kind_(cause.kind()) {}

std::string SectionHeading(Modality m) { return CapitalizedModality(m) + " analysis:"; }

std::string ExtractPlanSection(std::string_view response) {
  static const std::regex kMarker(R"(^[#*\s]*(final\s+)?(task\s+)?plan\s*:?[*\s]*$)", std::regex::icase);
  std::size_t pos = 0;
  std::optional<std::size_t> after;
  while (pos < response.size()) {
    auto eol = response.find('\n', pos);
    if (eol == std::string_view::npos) eol = response.size();
    const std::string line(response.substr(pos, eol - pos));
    if (std::regex_match(line, kMarker)) after = eol + 1;
    pos = eol + 1;
  }
  if (!after) return std::string(response);
  if (*after >= response.size()) return {};
  return std::string(response.substr(*after));
}

Conversation BuildStageRequest(const Strategy& strategy, const MultimodalDemo& demo,
                               const PromptConfig& config, const std::vector<std::string>& prior,
                               std::size_t stage) {
  const PromptConfig active = config.WithModalities(strategy.modalities);
  Conversation conv = BuildPrompt(active);

  if (strategy.kind == StrategyKind::kChain) {
    const auto mods = strategy.modalities.Ordered();
    if (stage >= mods.size() || prior.size() < stage) {
      throw std::invalid_argument("chain stage out of range");
    }
    for (std::size_t j = 0; j < stage; ++j) {
      conv.push_back(ChainStageMessage(demo, active, mods, j));
      conv.push_back(Message::Text(Role::kAssistant, prior[j]));
    }
    conv.push_back(ChainStageMessage(demo, active, mods, stage));
    return conv;
  }

  if (stage != 0) throw std::invalid_argument("single-query strategies have one stage");
  const bool interleaved =
      strategy.kind == StrategyKind::kMerged || strategy.kind == StrategyKind::kMergSep;
  Message msg;
  msg.role = Role::kUser;
  msg.parts.push_back(Part::Text(RecordingHeader(demo) + " " + SingleQueryInstruction(strategy)));
  auto data = RenderDemoParts(demo, active.keyframes, strategy.modalities,
                              interleaved ? PartLayout::kInterleaved : PartLayout::kGrouped);
  msg.parts.insert(msg.parts.end(), std::make_move_iterator(data.begin()),
                   std::make_move_iterator(data.end()));
  conv.push_back(std::move(msg));
  return conv;
}

ChainResult RunStrategy(const Strategy& strategy, const MultimodalDemo& demo, const PromptConfig& config,
                        Backend& backend) {
  RequireModalities(demo, strategy.modalities);
  ChainResult result;
  result.strategy = strategy;

  const bool chain = strategy.kind == StrategyKind::kChain;
  const auto mods = strategy.modalities.Ordered();
  const std::size_t n_stages = chain ? mods.size() : 1;
  std::vector<std::string> prior;
  for (std::size_t stage = 0; stage < n_stages; ++stage) {
    const Conversation request = BuildStageRequest(strategy, demo, config, prior, stage);
    const std::optional<Modality> modality = chain ? std::optional(mods[stage]) : std::nullopt;
    std::string response;
    try {
      response = backend.Complete(request);
    } catch (const BackendError& e) {
      throw StageError(stage, modality, e);
    }
    ++result.query_count;
    result.stages.push_back({modality, RequestDigest(request, backend.settings()), response});
    prior.push_back(std::move(response));
  }
  result.final_text = prior.back();

  if (SeparateAnswers(strategy.kind)) {
    for (Modality m : mods) {
      if (result.final_text.find(SectionHeading(m)) == std::string::npos) {
        result.diagnostics.push_back("response lacks section '" + SectionHeading(m) + "'");
      }
    }
  }
  try {
    PlanParseResult parsed = ParsePlan(ExtractPlanSection(result.final_text));
    result.plan = std::move(parsed.plan);
  } catch (const PlanParseError& e) {
    result.diagnostics.push_back(e.what());
    for (const auto& d : e.diagnostics()) {
      result.diagnostics.push_back("line " + std::to_string(d.line) + ": " + d.message);
    }
  }
  return result;
}

double MeanAccuracy(const std::vector<TrialOutcome>& trials) {
  if (trials.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& t : trials) sum += t.metrics.exact_match ? 1.0 : 0.0;
  return sum / static_cast<double>(trials.size());
}

double MeanSimilarity(const std::vector<TrialOutcome>& trials) {
  if (trials.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& t : trials) sum += t.metrics.similarity;
  return sum / static_cast<double>(trials.size());
}

TrialSummary RunTrials(const Strategy& strategy, const MultimodalDemo& demo, const PromptConfig& config,
                       Backend& backend, const ActionPlan& ground_truth, std::size_t n_trials) {
  if (n_trials == 0) throw std::invalid_argument("n_trials must be at least 1");
  TrialSummary summary;
  for (std::size_t t = 0; t < n_trials; ++t) {
    TrialOutcome outcome;
    try {
      ChainResult r = RunStrategy(strategy, demo, config, backend);
      outcome.query_count = r.query_count;
      if (r.plan) {
        outcome.metrics = ScorePlan(*r.plan, ground_truth);
      } else {
        outcome.failed = true;
        outcome.note = "unparseable plan";
      }
    } catch (const StageError& e) {
      outcome.failed = true;
      outcome.note = e.what();
    }
    summary.trials.push_back(std::move(outcome));
  }
  summary.mean_accuracy = MeanAccuracy(summary.trials);
  summary.mean_similarity = MeanSimilarity(summary.trials);
  return summary;
}

std::string ProgramRequestHeader() {
  std::string header = "from skills import ";
  const auto& sigs = SkillRegistry::Default().signatures();
  for (std::size_t i = 0; i < sigs.size(); ++i) {
    if (i > 0) header += ", ";
    header += SkillName(sigs[i].skill);
  }
  header += "\n# Based on video analysis and APIs, generate python code:";
  return header;
}

std::string GenerateProgram(const ChainResult& analysis, const std::string& api_description,
                            Backend& backend, const std::string& recording_id) {
  if (analysis.stages.empty() && analysis.final_text.empty()) {
    throw std::invalid_argument("analysis has neither stages nor a final plan");
  }
  std::string system =
      "You write robot control programs. Use only the robot API below: plain calls and "
      "`for _ in range(N):` loops, no other statements.\n\n## Robot API\n" +
      api_description;

  std::string user = recording_id.empty() ? std::string() : "Recording " + recording_id + ".\n";
  user += "Video analysis:\n";
  for (std::size_t i = 0; i < analysis.stages.size(); ++i) {
    const auto& s = analysis.stages[i];
    user += "\n[" + (s.modality ? CapitalizedModality(*s.modality) : std::string("Combined")) +
            " analysis]\n" + s.response;
    if (!user.ends_with('\n')) user += '\n';
  }
  if (analysis.stages.empty()) user += analysis.final_text + "\n";
  user += "\n" + ProgramRequestHeader();

  const Conversation request = {Message::Text(Role::kSystem, std::move(system)),
                                Message::Text(Role::kUser, std::move(user))};
  const std::string reply = backend.Complete(request);
  if (Trim(reply).empty()) {
    throw BackendError(BackendError::Kind::kEmptyResponse, "empty program response",
                       RequestDigest(request, backend.settings()));
  }

  const auto fence = reply.find("```");
  if (fence != std::string::npos) {
    auto body_begin = reply.find('\n', fence);
    const auto close = body_begin == std::string::npos ? std::string::npos : reply.find("```", body_begin);
    if (close != std::string::npos) return reply.substr(body_begin + 1, close - body_begin - 1);
  }
  return reply;
}

}  // namespace modalchain
