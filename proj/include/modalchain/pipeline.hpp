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

#ifndef MODALCHAIN_PIPELINE_HPP_
#define MODALCHAIN_PIPELINE_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "modalchain/backend.hpp"
#include "modalchain/demo.hpp"
#include "modalchain/interpreter.hpp"
#include "modalchain/orchestrator.hpp"
#include "modalchain/program.hpp"
#include "modalchain/prompt.hpp"
#include "modalchain/task.hpp"

namespace modalchain {

// Stage names in execution order.
inline constexpr std::string_view kPipelineStages[] = {"analyze", "plan",    "generate", "parse",
                                                       "validate", "execute", "check"};

struct PipelineStage {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct PipelineReport {
  std::string recording;
  std::string task;
  std::vector<PipelineStage> stages;  // stages that ran; later ones were skipped
  std::optional<ChainResult> analysis;
  std::string program_source;
  std::vector<ProgramDiagnostic> diagnostics;
  std::optional<EventTrace> trace;
  std::optional<WorldState> final_world;
  std::optional<SuccessReport> verdict;

  bool success() const { return verdict && verdict->success; }
  // Name of the first failed stage, or empty.
  std::string failed_stage() const;
  Json ToJson() const;
};

struct PipelineOptions {
  InterpretOptions interpret;
  // When set, artifacts are written here: analysis.txt, plan.txt,
  // program.py, trace.jsonl, report.json.
  std::optional<std::filesystem::path> output_dir;
};

// Analysis (chain of modality) -> plan -> program -> parse -> validate ->
// execute -> success check. A failing stage is recorded and ends the run.
PipelineReport RunPipeline(const MultimodalDemo& demo, const TaskSpec& task, const PromptConfig& prompt,
                           const std::string& api_description, Backend& backend,
                           const PipelineOptions& options = {});

}  // namespace modalchain

#endif  // MODALCHAIN_PIPELINE_HPP_
