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

#ifndef MODALCHAIN_ORCHESTRATOR_HPP_
#define MODALCHAIN_ORCHESTRATOR_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "modalchain/backend.hpp"
#include "modalchain/common.hpp"
#include "modalchain/demo.hpp"
#include "modalchain/plan.hpp"
#include "modalchain/prompt.hpp"

namespace modalchain {

// Reasoning procedures compared in the evaluation.
enum class StrategyKind {
  kMerged,   // interleaved inputs, final answer only
  kMergSep,  // interleaved inputs, per-modality sections then final answer
  kSepMerg,  // grouped inputs, final answer only
  kSepSep,   // grouped inputs, per-modality sections then final answer
  kChain,    // one query per modality, each conditioned on earlier analyses
};

std::string_view StrategyName(StrategyKind k);  // "merged", ..., "com"
std::optional<StrategyKind> ParseStrategy(std::string_view s);

struct Strategy {
  StrategyKind kind = StrategyKind::kChain;
  ModalitySet modalities = ModalitySet::All();
};

// Modality subsets used for ablations: "all", "image-only", "wo-img",
// "wo-force", "wo-hand". Also accepts explicit lists like "force,image".
std::optional<ModalitySet> ParseAblation(std::string_view s);
std::string AblationName(const ModalitySet& m);

struct StageAnalysis {
  std::optional<Modality> modality;  // set for chain stages
  std::string digest;
  std::string response;
};

struct ChainResult {
  Strategy strategy;
  std::vector<StageAnalysis> stages;
  std::string final_text;
  std::optional<ActionPlan> plan;
  std::vector<std::string> diagnostics;
  std::size_t query_count = 0;
};

// A backend failure during one stage of a strategy run.
class StageError : public std::runtime_error {
 public:
  StageError(std::size_t stage, std::optional<Modality> modality, const BackendError& cause);
  std::size_t stage() const { return stage_; }
  std::optional<Modality> modality() const { return modality_; }
  BackendError::Kind kind() const { return kind_; }

 private:
  std::size_t stage_;
  std::optional<Modality> modality_;
  BackendError::Kind kind_;
};

// Section heading each per-modality answer must carry, e.g. "Force analysis:".
std::string SectionHeading(Modality m);

// Text after the last "Plan:" marker line, or all of `response` if none.
std::string ExtractPlanSection(std::string_view response);

// Requests a strategy would send, given earlier responses for chain runs.
// Exposed for structural tests; RunStrategy uses it internally.
Conversation BuildStageRequest(const Strategy& strategy, const MultimodalDemo& demo,
                               const PromptConfig& config, const std::vector<std::string>& prior,
                               std::size_t stage);

// Throws std::invalid_argument when the demo lacks a requested modality
// and StageError when a backend call fails. An unparseable final answer is
// not an error: the result carries diagnostics and no plan.
ChainResult RunStrategy(const Strategy& strategy, const MultimodalDemo& demo, const PromptConfig& config,
                        Backend& backend);

struct TrialOutcome {
  PlanMetrics metrics;
  bool failed = false;
  std::string note;
  std::size_t query_count = 0;
};

struct TrialSummary {
  std::vector<TrialOutcome> trials;
  double mean_accuracy = 0.0;
  double mean_similarity = 0.0;
};

double MeanAccuracy(const std::vector<TrialOutcome>& trials);
double MeanSimilarity(const std::vector<TrialOutcome>& trials);

// Runs `n_trials` independent strategy runs and scores each against
// `ground_truth`. Failed trials score (false, 0.0) and carry a note.
TrialSummary RunTrials(const Strategy& strategy, const MultimodalDemo& demo, const PromptConfig& config,
                       Backend& backend, const ActionPlan& ground_truth, std::size_t n_trials = 3);

// Header closing every code-generation request.
std::string ProgramRequestHeader();

// One extra query turning an analysis into skill-program source. Returns
// the body of a fenced code block when the reply contains one.
std::string GenerateProgram(const ChainResult& analysis, const std::string& api_description,
                            Backend& backend, const std::string& recording_id = "");

}  // namespace modalchain

#endif  // MODALCHAIN_ORCHESTRATOR_HPP_
