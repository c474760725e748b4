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

#ifndef MODALCHAIN_EVAL_HPP_
#define MODALCHAIN_EVAL_HPP_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "modalchain/backend.hpp"
#include "modalchain/demo.hpp"
#include "modalchain/orchestrator.hpp"
#include "modalchain/plan.hpp"
#include "modalchain/report.hpp"
#include "modalchain/task.hpp"

namespace modalchain {

// Unusable configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Missing or malformed corpus (CLI exit code 3).
class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class BackendKind { kLive, kReplay, kMock };

std::string_view BackendKindName(BackendKind k);
std::optional<BackendKind> ParseBackendKind(std::string_view s);

struct BackendConfig {
  BackendKind kind = BackendKind::kReplay;
  BackendSettings settings;
  std::vector<std::filesystem::path> transcripts;  // replay
  std::filesystem::path rules;                     // mock
  std::string endpoint;                            // live
  std::string api_key_env;                         // live
  std::optional<std::filesystem::path> record;     // transcript output
  std::size_t max_in_flight = 4;
};

// Paths are resolved against the config file's directory at load time.
struct EvalConfig {
  std::filesystem::path corpus_dir;
  std::filesystem::path prompt_config;
  std::filesystem::path api_description;
  std::vector<StrategyKind> strategies = {StrategyKind::kChain};
  std::vector<ModalitySet> ablations = {ModalitySet::All()};
  BackendConfig backend;
  std::size_t trials = 3;
  std::filesystem::path output_dir = "out";
  std::size_t parallelism = 1;
  std::uint64_t seed = 0;

  static EvalConfig FromJson(const Json& doc, const std::filesystem::path& base_dir);
  static EvalConfig Load(const std::filesystem::path& path);
  // Throws ConfigError.
  void Validate() const;
};

// One evaluation recording: <corpus>/<name>/{demo.json, plan.txt[, task.json]}.
struct CorpusEntry {
  std::string name;
  std::string task;  // task.json "task", else the directory name
  std::filesystem::path dir;
  MultimodalDemo demo;
  ActionPlan ground_truth;
  std::optional<TaskSpec> task_spec;
};

// Entries sorted by directory name. Throws CorpusError naming the bad file,
// or "no recordings found" for an empty corpus.
std::vector<CorpusEntry> LoadCorpus(const std::filesystem::path& dir);

// Builds the configured backend. Live backends always get a transcript:
// `record` if set, else <output_dir>/transcripts/live.jsonl.
std::unique_ptr<Backend> MakeBackend(const BackendConfig& config, const std::filesystem::path& output_dir);

// Every (recording, strategy, ablation) combination runs `trials` times on
// up to `parallelism` threads; per-recording failures become failed
// trials. Rows are ordered by task name, then config order.
MetricsTable RunEval(const EvalConfig& config, Backend& backend);
MetricsTable RunEval(const EvalConfig& config);

}  // namespace modalchain

#endif  // MODALCHAIN_EVAL_HPP_
