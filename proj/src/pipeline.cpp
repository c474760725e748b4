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

#include "modalchain/pipeline.hpp"

namespace modalchain {

namespace {

std::string AnalysisText(const ChainResult& r) {
  std::string out;
  for (const StageAnalysis& s : r.stages) {
    out += "## " + (s.modality ? std::string(ModalityName(*s.modality)) : std::string("combined")) + "\n";
    out += s.response;
    if (!out.ends_with('\n')) out += '\n';
  }
  return out;
}

class Runner {
 public:
  Runner(PipelineReport& report, const PipelineOptions& options) : report_(report), options_(options) {}

  // Records a stage outcome; returns whether the pipeline may continue.
  bool Record(std::string_view name, bool ok, std::string detail) {
    report_.stages.push_back({std::string(name), ok, std::move(detail)});
    return ok;
  }

  void Write(const std::string& file, const std::string& text) const {
    if (options_.output_dir) WriteTextFile(*options_.output_dir / file, text);
  }

 private:
  PipelineReport& report_;
  const PipelineOptions& options_;
};

bool RunStages(PipelineReport& report, Runner& run, const MultimodalDemo& demo, const TaskSpec& task,
               const PromptConfig& prompt, const std::string& api_description, Backend& backend,
               const PipelineOptions& options) {
  try {
    report.analysis = RunStrategy(Strategy{StrategyKind::kChain, prompt.modalities}, demo, prompt, backend);
  } catch (const std::exception& e) {
    return run.Record("analyze", false, e.what());
  }
  const ChainResult& analysis = *report.analysis;
  run.Write("analysis.txt", AnalysisText(analysis));
  run.Record("analyze", true, std::to_string(analysis.query_count) + " queries");

  if (!analysis.plan) {
    std::string detail = "no plan in final analysis";
    for (const auto& d : analysis.diagnostics) detail += "; " + d;
    return run.Record("plan", false, detail);
  }
  run.Write("plan.txt", RenderPlan(*analysis.plan));
  run.Record("plan", true, std::to_string(analysis.plan->steps.size()) + " steps");

  try {
    report.program_source = GenerateProgram(analysis, api_description, backend, demo.id);
  } catch (const std::exception& e) {
    return run.Record("generate", false, e.what());
  }
  run.Write("program.py", report.program_source);
  run.Record("generate", true, "");

  ProgramAst ast;
  try {
    ast = ParseProgram(report.program_source);
  } catch (const ProgramError& e) {
    return run.Record("parse", false, e.what());
  }
  run.Record("parse", true, std::to_string(UnrolledCallCount(ast.statements)) + " calls after unrolling");

  report.diagnostics = Validate(ast, SkillRegistry::Default(), ValidateOptions{options.interpret.max_unrolled});
  if (!report.diagnostics.empty()) {
    std::string detail;
    for (const auto& d : report.diagnostics) {
      if (!detail.empty()) detail += "; ";
      detail += "line " + std::to_string(d.line) + " " + d.code + ": " + d.message;
    }
    return run.Record("validate", false, detail);
  }
  run.Record("validate", true, "");

  WorldState world = task.initial;
  report.trace = Interpret(ast, world, options.interpret, std::string(TaskIdName(task.task)));
  report.final_world = world;
  run.Write("trace.jsonl", report.trace->ToJsonl());
  const Event* failure = report.trace->FirstFailure();
  run.Record("execute", true,
             std::to_string(report.trace->size()) + " events" +
                 (failure ? "; step " + std::to_string(failure->step) + " failed: " + failure->reason : ""));

  report.verdict = CheckSuccess(task, *report.trace, world);
  return run.Record("check", true, report.verdict->Summary());
}

}  // namespace

std::string PipelineReport::failed_stage() const {
  for (const PipelineStage& s : stages) {
    if (!s.ok) return s.name;
  }
  return "";
}

Json PipelineReport::ToJson() const {
  Json stage_list = Json::array();
  for (const PipelineStage& s : stages) stage_list.push_back({{"stage", s.name}, {"ok", s.ok}, {"detail", s.detail}});
  Json skipped = Json::array();
  for (std::size_t i = stages.size(); i < std::size(kPipelineStages); ++i) skipped.push_back(kPipelineStages[i]);
  Json diags = Json::array();
  for (const auto& d : diagnostics) diags.push_back({{"line", d.line}, {"code", d.code}, {"message", d.message}});
  Json doc = {{"recording", recording},
              {"task", task},
              {"stages", stage_list},
              {"skipped", skipped},
              {"failed_stage", failed_stage()},
              {"diagnostics", diags},
              {"success", success()}};
  if (analysis && analysis->plan) doc["plan"] = RenderPlan(*analysis->plan);
  if (!program_source.empty()) doc["program"] = program_source;
  if (verdict) doc["verdict"] = {{"success", verdict->success}, {"details", verdict->details}};
  if (verdict && verdict->failed_step) doc["verdict"]["failed_step"] = *verdict->failed_step;
  return doc;
}

PipelineReport RunPipeline(const MultimodalDemo& demo, const TaskSpec& task, const PromptConfig& prompt,
                           const std::string& api_description, Backend& backend,
                           const PipelineOptions& options) {
  PipelineReport report;
  report.recording = demo.id;
  report.task = std::string(TaskIdName(task.task));
  Runner run(report, options);
  RunStages(report, run, demo, task, prompt, api_description, backend, options);
  run.Write("report.json", report.ToJson().dump(2) + "\n");
  return report;
}

}  // namespace modalchain
