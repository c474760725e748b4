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

// modalchain: command-line entry point for evaluation runs, end-to-end
// pipeline runs and report conversion.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "modalchain/eval.hpp"
#include "modalchain/pipeline.hpp"

namespace mc = modalchain;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitConfig = 2;
constexpr int kExitCorpus = 3;
constexpr int kExitBackend = 4;

std::vector<std::string> SplitList(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

struct RunArgs {
  std::string config;
  std::string strategy;
  std::string modalities;
  std::string backend;
  std::size_t trials = 0;
  std::size_t parallelism = 0;
  std::string out;
  std::string record;
};

struct PipelineArgs {
  std::string demo;
  std::string task;
  std::string config;
  std::string out;
  std::string record;
  bool keep_going = false;
};

struct ReportArgs {
  std::string format = "csv";
  std::string table;
  std::string config;
  std::string out;
};

mc::EvalConfig LoadConfigWithOverrides(const RunArgs& a) {
  mc::EvalConfig config = mc::EvalConfig::Load(a.config);
  if (!a.strategy.empty()) {
    config.strategies.clear();
    for (const std::string& s : SplitList(a.strategy)) {
      auto k = mc::ParseStrategy(s);
      if (!k) throw mc::ConfigError("unknown strategy '" + s + "'");
      config.strategies.push_back(*k);
    }
  }
  if (!a.modalities.empty()) {
    auto m = mc::ParseAblation(a.modalities);
    if (!m) throw mc::ConfigError("unknown modality subset '" + a.modalities + "'");
    config.ablations = {*m};
  }
  if (!a.backend.empty()) {
    auto k = mc::ParseBackendKind(a.backend);
    if (!k) throw mc::ConfigError("unknown backend '" + a.backend + "'");
    config.backend.kind = *k;
  }
  if (a.trials > 0) config.trials = a.trials;
  if (a.parallelism > 0) config.parallelism = a.parallelism;
  if (!a.out.empty()) config.output_dir = a.out;
  if (!a.record.empty()) config.backend.record = a.record;
  return config;
}

int CmdRun(const RunArgs& a) {
  const mc::EvalConfig config = LoadConfigWithOverrides(a);
  const mc::MetricsTable table = mc::RunEval(config);
  mc::WriteReports(table, config.output_dir);
  std::cout << mc::EmitCsv(table);
  std::cerr << "wrote " << (config.output_dir / "metrics.csv").string() << " and metrics.json\n";
  return kExitOk;
}

int CmdPipeline(const PipelineArgs& a) {
  RunArgs run;
  run.config = a.config;
  run.out = a.out;
  run.record = a.record;
  mc::EvalConfig config = LoadConfigWithOverrides(run);
  mc::PromptConfig prompt;
  std::string api;
  try {
    prompt = mc::PromptConfig::Load(config.prompt_config);
    prompt.Validate();
    if (config.api_description.empty()) throw mc::ConfigError("config has no api_description");
    api = mc::ReadTextFile(config.api_description);
  } catch (const mc::ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw mc::ConfigError(e.what());
  }
  mc::MultimodalDemo demo;
  mc::TaskSpec task;
  try {
    demo = mc::LoadRecording(a.demo);
    task = mc::LoadTaskSpec(a.task);
  } catch (const std::exception& e) {
    throw mc::CorpusError(e.what());
  }
  auto backend = mc::MakeBackend(config.backend, config.output_dir);
  mc::PipelineOptions options;
  options.interpret.halt_on_failure = !a.keep_going;
  options.output_dir = config.output_dir / demo.id;
  const mc::PipelineReport report = mc::RunPipeline(demo, task, prompt, api, *backend, options);
  for (const auto& s : report.stages) {
    std::cout << (s.ok ? "ok   " : "FAIL ") << s.name << (s.detail.empty() ? "" : ": " + s.detail) << "\n";
  }
  std::cout << "success: " << (report.success() ? "true" : "false") << "\n";
  std::cerr << "artifacts in " << options.output_dir->string() << "\n";
  const std::string failed = report.failed_stage();
  if (failed == "analyze" || failed == "generate") return kExitBackend;
  return report.success() ? kExitOk : kExitOther;
}

int CmdReport(const ReportArgs& a) {
  fs::path table_path = a.table;
  if (table_path.empty()) {
    if (a.config.empty()) throw mc::ConfigError("pass --table or --config");
    table_path = mc::EvalConfig::Load(a.config).output_dir / "metrics.json";
  }
  std::string text;
  try {
    text = mc::ReadTextFile(table_path);
  } catch (const mc::IoError& e) {
    throw mc::ConfigError(e.what());
  }
  const mc::MetricsTable table = mc::ParseJsonReport(text);
  const std::string body = a.format == "json" ? mc::EmitJson(table) : mc::EmitCsv(table);
  if (a.out.empty()) {
    std::cout << body;
  } else {
    mc::WriteTextFile(a.out, body);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chain-of-Modality evaluation toolkit"};
  app.require_subcommand(1);
  CLI::App* eval = app.add_subcommand("eval", "Evaluation harness");
  eval->require_subcommand(1);

  RunArgs run;
  CLI::App* run_cmd = eval->add_subcommand("run", "Score strategies against the corpus ground truth");
  run_cmd->add_option("--config", run.config, "Evaluation config (JSON)")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--strategy", run.strategy, "com|merged|merg-sep|sep-merg|sep-sep (comma list)");
  run_cmd->add_option("--modalities", run.modalities, "Modality subset, e.g. force,hand,image or wo-force");
  run_cmd->add_option("--backend", run.backend, "live|replay|mock");
  run_cmd->add_option("--trials", run.trials, "Trials per recording")->check(CLI::PositiveNumber);
  run_cmd->add_option("--parallelism", run.parallelism, "Concurrent recordings")->check(CLI::PositiveNumber);
  run_cmd->add_option("--out", run.out, "Output directory");
  run_cmd->add_option("--record", run.record, "Write a transcript of every exchange to this JSONL file");

  PipelineArgs pipe;
  CLI::App* pipe_cmd = eval->add_subcommand("pipeline", "Analysis to program to simulated execution");
  pipe_cmd->add_option("--demo", pipe.demo, "Recording manifest")->required()->check(CLI::ExistingFile);
  pipe_cmd->add_option("--task", pipe.task, "Task spec")->required()->check(CLI::ExistingFile);
  pipe_cmd->add_option("--config", pipe.config, "Evaluation config (JSON)")->required()->check(CLI::ExistingFile);
  pipe_cmd->add_option("--out", pipe.out, "Output directory");
  pipe_cmd->add_option("--record", pipe.record, "Write a transcript of every exchange to this JSONL file");
  pipe_cmd->add_flag("--keep-going", pipe.keep_going, "Continue after a failed skill call");

  ReportArgs rep;
  CLI::App* rep_cmd = eval->add_subcommand("report", "Re-emit a metrics table");
  rep_cmd->add_option("--format", rep.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  rep_cmd->add_option("--table", rep.table, "metrics.json from a previous run");
  rep_cmd->add_option("--config", rep.config, "Use <output_dir>/metrics.json of this config");
  rep_cmd->add_option("--out", rep.out, "Write here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return CmdRun(run);
    if (pipe_cmd->parsed()) return CmdPipeline(pipe);
    if (rep_cmd->parsed()) return CmdReport(rep);
  } catch (const mc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const mc::CorpusError& e) {
    std::cerr << "corpus error: " << e.what() << "\n";
    return kExitCorpus;
  } catch (const mc::BackendError& e) {
    std::cerr << "backend error: " << e.what() << "\n";
    return kExitBackend;
  } catch (const mc::SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOther;
  }
  return kExitOther;
}
