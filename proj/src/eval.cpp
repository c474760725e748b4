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

#include "modalchain/eval.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>

#include "modalchain/http_backend.hpp"
#include "modalchain/prompt.hpp"

namespace modalchain {

namespace fs = std::filesystem;
namespace ju = json_util;

namespace {

fs::path Resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

template <typename F>
auto AsConfig(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const SchemaError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const IoError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

BackendConfig ParseBackend(const Json& j, const fs::path& base) {
  BackendConfig b;
  const std::string kind = ju::AsString(ju::Require(j, "kind", "backend"), "backend.kind");
  auto k = ParseBackendKind(kind);
  if (!k) throw SchemaError("backend.kind", "expected live|replay|mock, got '" + kind + "'");
  b.kind = *k;
  if (const Json* v = ju::Find(j, "model")) b.settings.model = ju::AsString(*v, "backend.model");
  if (const Json* v = ju::Find(j, "temperature")) b.settings.temperature = ju::AsNumber(*v, "backend.temperature");
  if (const Json* v = ju::Find(j, "max_tokens")) b.settings.max_tokens = static_cast<int>(ju::AsInteger(*v, "backend.max_tokens"));
  if (const Json* v = ju::Find(j, "transcripts")) {
    for (const std::string& t : ju::AsStringArray(*v, "backend.transcripts")) b.transcripts.push_back(Resolve(base, t));
  }
  if (const Json* v = ju::Find(j, "rules")) b.rules = Resolve(base, ju::AsString(*v, "backend.rules"));
  if (const Json* v = ju::Find(j, "endpoint")) b.endpoint = ju::AsString(*v, "backend.endpoint");
  if (const Json* v = ju::Find(j, "api_key_env")) b.api_key_env = ju::AsString(*v, "backend.api_key_env");
  if (const Json* v = ju::Find(j, "record")) b.record = Resolve(base, ju::AsString(*v, "backend.record"));
  if (const Json* v = ju::Find(j, "max_in_flight")) {
    const long long n = ju::AsInteger(*v, "backend.max_in_flight");
    if (n < 1) throw SchemaError("backend.max_in_flight", "must be at least 1");
    b.max_in_flight = static_cast<std::size_t>(n);
  }
  return b;
}

struct Job {
  std::size_t entry;
  std::size_t strategy;
  std::size_t ablation;
};

}  // namespace

std::string_view BackendKindName(BackendKind k) {
  switch (k) {
    case BackendKind::kLive: return "live";
    case BackendKind::kReplay: return "replay";
    case BackendKind::kMock: return "mock";
  }
  return "?";
}

std::optional<BackendKind> ParseBackendKind(std::string_view s) {
  if (s == "live") return BackendKind::kLive;
  if (s == "replay") return BackendKind::kReplay;
  if (s == "mock") return BackendKind::kMock;
  return std::nullopt;
}

EvalConfig EvalConfig::FromJson(const Json& doc, const fs::path& base) {
  return AsConfig([&] {
    if (!doc.is_object()) throw SchemaError("", "config must be an object");
    EvalConfig c;
    c.corpus_dir = Resolve(base, ju::AsString(ju::Require(doc, "corpus", ""), "corpus"));
    c.prompt_config = Resolve(base, ju::AsString(ju::Require(doc, "prompt", ""), "prompt"));
    if (const Json* v = ju::Find(doc, "api_description")) c.api_description = Resolve(base, ju::AsString(*v, "api_description"));
    if (const Json* v = ju::Find(doc, "strategies")) {
      c.strategies.clear();
      const auto names = ju::AsStringArray(*v, "strategies");
      for (std::size_t i = 0; i < names.size(); ++i) {
        auto s = ParseStrategy(names[i]);
        if (!s) throw SchemaError(ju::Index("strategies", i), "unknown strategy '" + names[i] + "'");
        c.strategies.push_back(*s);
      }
    }
    if (const Json* v = ju::Find(doc, "ablations")) {
      c.ablations.clear();
      const auto names = ju::AsStringArray(*v, "ablations");
      for (std::size_t i = 0; i < names.size(); ++i) {
        auto m = ParseAblation(names[i]);
        if (!m) throw SchemaError(ju::Index("ablations", i), "unknown ablation '" + names[i] + "'");
        c.ablations.push_back(*m);
      }
    }
    if (const Json* v = ju::Find(doc, "backend")) c.backend = ParseBackend(*v, base);
    if (const Json* v = ju::Find(doc, "trials")) {
      const long long n = ju::AsInteger(*v, "trials");
      if (n < 1) throw SchemaError("trials", "must be at least 1");
      c.trials = static_cast<std::size_t>(n);
    }
    if (const Json* v = ju::Find(doc, "output_dir")) c.output_dir = Resolve(base, ju::AsString(*v, "output_dir"));
    else c.output_dir = base / "out";
    if (const Json* v = ju::Find(doc, "parallelism")) {
      const long long n = ju::AsInteger(*v, "parallelism");
      if (n < 1) throw SchemaError("parallelism", "must be at least 1");
      c.parallelism = static_cast<std::size_t>(n);
    }
    if (const Json* v = ju::Find(doc, "seed")) {
      const long long n = ju::AsInteger(*v, "seed");
      if (n < 0) throw SchemaError("seed", "must be non-negative");
      c.seed = static_cast<std::uint64_t>(n);
    }
    return c;
  });
}

EvalConfig EvalConfig::Load(const fs::path& path) {
  const Json doc = AsConfig([&] { return ReadJsonFile(path); });
  return FromJson(doc, path.parent_path());
}

void EvalConfig::Validate() const {
  if (trials < 1) throw ConfigError("config: trials must be at least 1");
  if (parallelism < 1) throw ConfigError("config: parallelism must be at least 1");
  if (strategies.empty()) throw ConfigError("config: no strategies listed");
  if (ablations.empty()) throw ConfigError("config: no ablations listed");
  for (const ModalitySet& m : ablations) {
    if (m.Empty()) throw ConfigError("config: empty modality subset");
  }
  switch (backend.kind) {
    case BackendKind::kReplay:
      if (backend.transcripts.empty()) throw ConfigError("config: replay backend needs backend.transcripts");
      break;
    case BackendKind::kMock:
      if (backend.rules.empty()) throw ConfigError("config: mock backend needs backend.rules");
      break;
    case BackendKind::kLive:
      if (backend.endpoint.empty()) throw ConfigError("config: live backend needs backend.endpoint");
      break;
  }
  std::error_code ec;
  fs::create_directories(output_dir, ec);
  if (ec || !fs::is_directory(output_dir)) {
    throw ConfigError("config: output_dir " + output_dir.string() + " is not writable");
  }
  const fs::path probe = output_dir / ".write_probe";
  try {
    WriteTextFile(probe, "");
  } catch (const IoError&) {
    throw ConfigError("config: output_dir " + output_dir.string() + " is not writable");
  }
  fs::remove(probe, ec);
}

std::vector<CorpusEntry> LoadCorpus(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw CorpusError("corpus directory not found: " + dir.string());
  std::vector<fs::path> dirs;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_directory() && fs::exists(e.path() / "demo.json")) dirs.push_back(e.path());
  }
  if (dirs.empty()) throw CorpusError("no recordings found in " + dir.string());
  std::sort(dirs.begin(), dirs.end());

  std::vector<CorpusEntry> out;
  for (const fs::path& d : dirs) {
    CorpusEntry entry;
    entry.name = d.filename().string();
    entry.dir = d;
    try {
      entry.demo = LoadRecording(d / "demo.json");
      const fs::path plan_path = d / "plan.txt";
      if (!fs::exists(plan_path)) throw CorpusError(entry.name + ": missing plan.txt");
      PlanParseResult gt = ParsePlan(ReadTextFile(plan_path));
      if (!gt.diagnostics.empty()) {
        throw CorpusError(plan_path.string() + ":" + std::to_string(gt.diagnostics.front().line) + ": " +
                          gt.diagnostics.front().message);
      }
      entry.ground_truth = std::move(gt.plan);
      if (fs::exists(d / "task.json")) {
        entry.task_spec = LoadTaskSpec(d / "task.json");
        entry.task = std::string(TaskIdName(entry.task_spec->task));
      } else {
        entry.task = entry.name;
      }
    } catch (const CorpusError&) {
      throw;
    } catch (const std::exception& e) {
      throw CorpusError(entry.name + ": " + e.what());
    }
    out.push_back(std::move(entry));
  }
  return out;
}

std::unique_ptr<Backend> MakeBackend(const BackendConfig& config, const fs::path& output_dir) {
  std::unique_ptr<Backend> backend;
  switch (config.kind) {
    case BackendKind::kReplay:
      backend = ReplayBackend::FromFiles(config.settings, config.transcripts);
      break;
    case BackendKind::kMock: {
      const Json rules = ReadJsonFile(config.rules);
      backend = MockBackend::FromJson(config.settings, rules, config.rules.parent_path());
      break;
    }
    case BackendKind::kLive: {
      HttpBackendConfig http;
      http.endpoint = config.endpoint;
      http.api_key_env = config.api_key_env;
      backend = std::make_unique<HttpBackend>(config.settings, http, config.max_in_flight);
      break;
    }
  }
  std::optional<fs::path> record = config.record;
  if (!record && config.kind == BackendKind::kLive) record = output_dir / "transcripts" / "live.jsonl";
  if (record) {
    fs::create_directories(record->parent_path());
    backend->AttachTranscript(std::make_shared<Transcript>(*record));
  }
  return backend;
}

MetricsTable RunEval(const EvalConfig& config, Backend& backend) {
  config.Validate();
  const std::vector<CorpusEntry> corpus = LoadCorpus(config.corpus_dir);
  PromptConfig prompt;
  try {
    prompt = PromptConfig::Load(config.prompt_config);
    prompt.Validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("prompt config: ") + e.what());
  }

  std::vector<Job> jobs;
  for (std::size_t e = 0; e < corpus.size(); ++e) {
    for (std::size_t s = 0; s < config.strategies.size(); ++s) {
      for (std::size_t a = 0; a < config.ablations.size(); ++a) jobs.push_back({e, s, a});
    }
  }
  std::vector<TrialSummary> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const Job& job = jobs[i];
      const CorpusEntry& entry = corpus[job.entry];
      const Strategy strategy{config.strategies[job.strategy], config.ablations[job.ablation]};
      try {
        results[i] = RunTrials(strategy, entry.demo, prompt, backend, entry.ground_truth, config.trials);
      } catch (const std::exception& ex) {
        TrialSummary failed;
        for (std::size_t t = 0; t < config.trials; ++t) {
          TrialOutcome o;
          o.failed = true;
          o.note = ex.what();
          failed.trials.push_back(o);
        }
        results[i] = std::move(failed);
      }
    }
  };
  const std::size_t n_threads = std::min(config.parallelism, jobs.size());
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (std::size_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);
    for (auto& th : threads) th.join();
  }

  // Aggregate in fixed order: task name, then strategy and ablation as configured.
  std::map<std::string, std::vector<std::size_t>> by_task;
  for (std::size_t e = 0; e < corpus.size(); ++e) by_task[corpus[e].task].push_back(e);

  MetricsTable table;
  table.backend = backend.identity();
  table.model = backend.settings().model;
  table.seed = config.seed;
  for (const auto& [task, entries] : by_task) {
    for (std::size_t s = 0; s < config.strategies.size(); ++s) {
      for (std::size_t a = 0; a < config.ablations.size(); ++a) {
        MetricsRow row;
        row.task = task;
        row.strategy = std::string(StrategyName(config.strategies[s]));
        row.modalities = config.ablations[a].Label();
        for (std::size_t e : entries) {
          const std::size_t i = (e * config.strategies.size() + s) * config.ablations.size() + a;
          const auto& trials = results[i].trials;
          for (std::size_t t = 0; t < trials.size(); ++t) row.trials.push_back({corpus[e].name, t, trials[t]});
        }
        Finalize(row);
        table.rows.push_back(std::move(row));
      }
    }
  }
  return table;
}

MetricsTable RunEval(const EvalConfig& config) {
  std::unique_ptr<Backend> backend;
  try {
    backend = MakeBackend(config.backend, config.output_dir);
  } catch (const SchemaError& e) {
    throw ConfigError(std::string("backend: ") + e.what());
  } catch (const IoError& e) {
    throw ConfigError(std::string("backend: ") + e.what());
  }
  return RunEval(config, *backend);
}

}  // namespace modalchain
