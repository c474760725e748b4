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

#include "modalchain/prompt.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "modalchain/alias.hpp"
#include "modalchain/format.hpp"

namespace modalchain {

namespace ju = json_util;

namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool IsWordChar(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Case-insensitive whole-word search.
bool ContainsWord(const std::string& haystack_lower, const std::string& needle_lower) {
  if (needle_lower.empty()) return false;
  std::size_t pos = 0;
  while ((pos = haystack_lower.find(needle_lower, pos)) != std::string::npos) {
    const bool left_ok = pos == 0 || !IsWordChar(haystack_lower[pos - 1]);
    const std::size_t end = pos + needle_lower.size();
    const bool right_ok = end >= haystack_lower.size() || !IsWordChar(haystack_lower[end]);
    if (left_ok && right_ok) return true;
    ++pos;
  }
  return false;
}

std::string Pix(const Pixel& p) {
  return "(" + FormatFixed(p.x, 1) + ", " + FormatFixed(p.y, 1) + ")";
}

std::string FrameLabel(const Frame& f) {
  return "Keyframe " + std::to_string(f.index) + " (t=" + FormatFixed(f.timestamp_s, 2) + "s)";
}

std::string ModalityHeader(Modality m) {
  switch (m) {
    case Modality::kForce: return "Force data (normalized to [0, 1], one value per keyframe):";
    case Modality::kHand: return "Hand pose data (fingertip pixel locations per keyframe):";
    case Modality::kImage: return "Image data (one image per keyframe):";
  }
  return {};
}

std::vector<Part> ModalityBlock(const MultimodalDemo& demo, const KeyframeSet& kf, Modality m) {
  std::vector<Part> parts;
  parts.push_back(Part::Text(ModalityHeader(m), m));
  switch (m) {
    case Modality::kForce: {
      std::vector<double> values;
      for (const Frame& f : kf.frames) values.push_back(f.force);
      parts.push_back(Part::Series("force", std::move(values), Modality::kForce));
      break;
    }
    case Modality::kHand: {
      std::string lines;
      for (const Frame& f : kf.frames) {
        if (!lines.empty()) lines += '\n';
        lines += FrameLabel(f) + ": " + RenderHandPose(f.hands);
      }
      parts.push_back(Part::Text(std::move(lines), Modality::kHand));
      break;
    }
    case Modality::kImage:
      for (const Frame& f : kf.frames) {
        parts.push_back(Part::Image(demo.ImageRef(f), demo.ImagePath(f), Modality::kImage));
      }
      break;
  }
  return parts;
}

}  // namespace

std::string RenderHandPose(const HandPose& pose) {
  std::string out;
  for (Hand h : kAllHands) {
    if (!out.empty()) out += "; ";
    out += HandName(h);
    if (const auto& tips = pose.Get(h)) {
      out += " thumb " + Pix(tips->thumb) + " middle " + Pix(tips->middle);
    } else {
      out += " absent";
    }
  }
  return out;
}

std::vector<Part> RenderDemoParts(const MultimodalDemo& demo, std::size_t keyframes,
                                  const ModalitySet& modalities, PartLayout layout) {
  const std::size_t k = std::min(keyframes, demo.frames.size());
  const KeyframeSet kf = demo.frames.size() == 1
                             ? KeyframeSet{{0}, {demo.frames[0]}}
                             : SelectKeyframes(demo, std::max<std::size_t>(k, 2));
  std::vector<Part> parts;
  if (layout == PartLayout::kGrouped) {
    for (Modality m : modalities.Ordered()) {
      auto block = ModalityBlock(demo, kf, m);
      parts.insert(parts.end(), std::make_move_iterator(block.begin()),
                   std::make_move_iterator(block.end()));
    }
    return parts;
  }
  for (const Frame& f : kf.frames) {
    parts.push_back(Part::Text(FrameLabel(f) + ":"));
    for (Modality m : modalities.Ordered()) {
      switch (m) {
        case Modality::kForce:
          parts.push_back(Part::Series("force", {f.force}, Modality::kForce));
          break;
        case Modality::kHand:
          parts.push_back(Part::Text("hand: " + RenderHandPose(f.hands), Modality::kHand));
          break;
        case Modality::kImage:
          parts.push_back(Part::Image(demo.ImageRef(f), demo.ImagePath(f), Modality::kImage));
          break;
      }
    }
  }
  return parts;
}

PromptConfig PromptConfig::FromJson(const Json& doc, const std::filesystem::path& base_dir) {
  PromptConfig c;
  if (const Json* k = ju::Find(doc, "keyframes")) {
    const long long v = ju::AsInteger(*k, "keyframes");
    if (v < 2) throw SchemaError("keyframes", "must be at least 2");
    c.keyframes = static_cast<std::size_t>(v);
  }
  if (const Json* ms = ju::Find(doc, "modalities")) {
    c.modalities = ModalitySet{};
    const auto names = ju::AsStringArray(*ms, "modalities");
    for (std::size_t i = 0; i < names.size(); ++i) {
      auto m = ParseModality(names[i]);
      if (!m) throw SchemaError(ju::Index("modalities", i), "unknown modality '" + names[i] + "'");
      c.modalities.Insert(*m);
    }
  }
  const Json& desc = ju::Require(doc, "modality_descriptions", "");
  for (Modality m : kChainOrder) {
    const std::string key(ModalityName(m));
    c.modality_descriptions[m] =
        ju::AsString(ju::Require(desc, key, "modality_descriptions"), ju::Join("modality_descriptions", key));
  }
  if (const Json* f = ju::Find(doc, "action_set_file")) {
    c.action_set = ReadTextFile(base_dir / ju::AsString(*f, "action_set_file"));
  } else {
    c.action_set = ju::AsString(ju::Require(doc, "action_set", ""), "action_set");
  }
  const Json& ex = ju::Require(doc, "example", "");
  const auto manifest = base_dir / ju::AsString(ju::Require(ex, "manifest", "example"), "example.manifest");
  c.example_demo = LoadRecording(manifest);
  if (const Json* af = ju::Find(ex, "analysis_file")) {
    c.example_analysis = ReadTextFile(base_dir / ju::AsString(*af, "example.analysis_file"));
  } else {
    c.example_analysis = ju::AsString(ju::Require(ex, "analysis", "example"), "example.analysis");
  }
  c.example_objects = ju::AsStringArray(ju::Require(ex, "objects", "example"), "example.objects");
  for (auto& o : c.example_objects) o = NormalizeName(o);
  c.Validate();
  return c;
}

PromptConfig PromptConfig::Load(const std::filesystem::path& path) {
  return FromJson(ReadJsonFile(path), path.parent_path());
}

void PromptConfig::Validate() const {
  if (keyframes < 2) throw std::invalid_argument("keyframes must be at least 2");
  if (modalities.Empty()) throw std::invalid_argument("modality subset is empty");
  for (Modality m : modalities.Ordered()) {
    auto it = modality_descriptions.find(m);
    if (it == modality_descriptions.end() || it->second.empty()) {
      throw std::invalid_argument("missing description for modality " + std::string(ModalityName(m)));
    }
  }
  if (action_set.empty()) throw std::invalid_argument("action set description is empty");
  if (example_demo.frames.empty()) throw std::invalid_argument("example recording has no frames");
  if (example_analysis.empty()) throw std::invalid_argument("example analysis is empty");
}

PromptConfig PromptConfig::WithModalities(ModalitySet m) const {
  PromptConfig c = *this;
  c.modalities = m;
  return c;
}

Conversation BuildPrompt(const PromptConfig& config) {
  config.Validate();
  std::string system =
      "You analyze recordings of a person performing a manipulation task and recover the "
      "sequence of actions, including the hand used, the object acted on, motion direction, "
      "rotation angle and applied force for each action.\n\n"
      "## Input modalities\n";
  for (Modality m : config.modalities.Ordered()) {
    system += "\n";
    system += kModalitySectionPrefix;
    system += ModalityName(m);
    system += "\n" + config.modality_descriptions.at(m) + "\n";
  }
  system += "\n## Action set\n" + config.action_set;
  if (!system.ends_with('\n')) system += '\n';
  system +=
      "\n## Output format\nAnalyze the data, then end your answer with a line `Plan:` followed "
      "by one action per line in the form Skill(arg, ...).\n";

  Message example_user;
  example_user.role = Role::kUser;
  example_user.parts.push_back(Part::Text("Example recording:"));
  auto data = RenderDemoParts(config.example_demo, config.keyframes, config.modalities, PartLayout::kGrouped);
  example_user.parts.insert(example_user.parts.end(), std::make_move_iterator(data.begin()),
                            std::make_move_iterator(data.end()));

  return {Message::Text(Role::kSystem, std::move(system)), std::move(example_user),
          Message::Text(Role::kAssistant, config.example_analysis)};
}

std::vector<std::string> FindPromptLeaks(const Conversation& prompt, const ActionPlan& ground_truth,
                                         const std::vector<std::string>& example_objects) {
  std::string text;
  for (const Message& m : prompt) text += m.RenderText() + "\n";
  const std::string lower = Lower(text);

  std::vector<std::string> leaks;
  for (const std::string& obj : PlanObjects(ground_truth)) {
    std::string spaced = obj;
    std::replace(spaced.begin(), spaced.end(), '_', ' ');
    if (ContainsWord(lower, Lower(obj)) || ContainsWord(lower, Lower(spaced))) {
      leaks.push_back("object '" + obj + "' appears in the prompt");
    }
    for (const std::string& ex : example_objects) {
      if (NormalizeName(ex) == obj) leaks.push_back("object '" + obj + "' is declared by the example");
    }
  }
  for (const ActionStep& step : ground_truth.steps) {
    const std::string line = Lower(RenderStep(step));
    if (step.object && lower.find(line) != std::string::npos) {
      leaks.push_back("plan line '" + RenderStep(step) + "' appears in the prompt");
    }
  }
  std::sort(leaks.begin(), leaks.end());
  leaks.erase(std::unique(leaks.begin(), leaks.end()), leaks.end());
  return leaks;
}

}  // namespace modalchain
