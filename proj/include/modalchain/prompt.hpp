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

#ifndef MODALCHAIN_PROMPT_HPP_
#define MODALCHAIN_PROMPT_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "modalchain/common.hpp"
#include "modalchain/demo.hpp"
#include "modalchain/json_util.hpp"
#include "modalchain/message.hpp"
#include "modalchain/plan.hpp"

namespace modalchain {

// Everything that goes into the shared system prompt and the single
// worked example. Loaded from a JSON document:
//
//   {
//     "keyframes": 8,
//     "modalities": ["force", "hand", "image"],
//     "modality_descriptions": {"force": "...", "hand": "...", "image": "..."},
//     "action_set": "..."            (or "action_set_file": "actions.txt"),
//     "example": {"manifest": "example/demo.json",
//                 "analysis_file": "example/analysis.txt",
//                 "objects": ["apple", "can"]}
//   }
//
// Relative paths resolve against the config file's directory.
struct PromptConfig {
  std::map<Modality, std::string> modality_descriptions;
  std::string action_set;
  MultimodalDemo example_demo;
  std::string example_analysis;
  std::vector<std::string> example_objects;
  std::size_t keyframes = 8;
  ModalitySet modalities = ModalitySet::All();

  static PromptConfig FromJson(const Json& doc, const std::filesystem::path& base_dir);
  static PromptConfig Load(const std::filesystem::path& path);

  // Throws std::invalid_argument when a field is unusable.
  void Validate() const;
  PromptConfig WithModalities(ModalitySet m) const;
};

inline constexpr std::string_view kModalitySectionPrefix = "### Modality: ";
inline constexpr std::string_view kPlanMarker = "Plan:";

// System message plus the example exchange (user data turn, assistant
// analysis turn). Deterministic in `config`.
Conversation BuildPrompt(const PromptConfig& config);

enum class PartLayout {
  kInterleaved,  // per keyframe: force, hand, image
  kGrouped,      // one contiguous block per modality
};

// Data parts for the active `modalities` of `demo` over k keyframes.
std::vector<Part> RenderDemoParts(const MultimodalDemo& demo, std::size_t keyframes,
                                  const ModalitySet& modalities, PartLayout layout);

// "left thumb (x, y) middle (x, y); right absent"
std::string RenderHandPose(const HandPose& pose);

// Ground-truth object names and plan lines that occur in `prompt`, plus
// declared example objects that collide with them. Empty means no leak.
std::vector<std::string> FindPromptLeaks(const Conversation& prompt, const ActionPlan& ground_truth,
                                         const std::vector<std::string>& example_objects = {});

}  // namespace modalchain

#endif  // MODALCHAIN_PROMPT_HPP_
