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

#include "modalchain/report.hpp"

#include "modalchain/format.hpp"

namespace modalchain {

namespace ju = json_util;

void Finalize(MetricsRow& row) {
  std::vector<TrialOutcome> outcomes;
  row.query_count = 0;
  row.notes.clear();
  for (const TrialRecord& t : row.trials) {
    outcomes.push_back(t.outcome);
    row.query_count += t.outcome.query_count;
    if (!t.outcome.note.empty()) {
      row.notes.push_back(t.recording + " trial " + std::to_string(t.trial + 1) + ": " + t.outcome.note);
    }
  }
  row.mean_accuracy = outcomes.empty() ? 0.0 : MeanAccuracy(outcomes);
  row.mean_similarity = outcomes.empty() ? 0.0 : MeanSimilarity(outcomes);
}

std::string EmitCsv(const MetricsTable& table) {
  std::string out = "task,strategy,modalities,accuracy,similarity,trials\n";
  for (const MetricsRow& r : table.rows) {
    out += r.task + "," + r.strategy + "," + r.modalities + "," + FormatFixed(r.mean_accuracy, 4) + "," +
           FormatFixed(r.mean_similarity, 4) + "," + std::to_string(r.trials.size()) + "\n";
  }
  return out;
}

std::string EmitJson(const MetricsTable& table) {
  Json rows = Json::array();
  for (const MetricsRow& r : table.rows) {
    Json trials = Json::array();
    for (const TrialRecord& t : r.trials) {
      trials.push_back({{"recording", t.recording},
                        {"trial", t.trial},
                        {"exact_match", t.outcome.metrics.exact_match},
                        {"similarity", t.outcome.metrics.similarity},
                        {"failed", t.outcome.failed},
                        {"note", t.outcome.note},
                        {"queries", t.outcome.query_count}});
    }
    rows.push_back({{"task", r.task},
                    {"strategy", r.strategy},
                    {"modalities", r.modalities},
                    {"accuracy", r.mean_accuracy},
                    {"similarity", r.mean_similarity},
                    {"accuracy_4dp", FormatFixed(r.mean_accuracy, 4)},
                    {"similarity_4dp", FormatFixed(r.mean_similarity, 4)},
                    {"queries", r.query_count},
                    {"notes", r.notes},
                    {"trials", trials}});
  }
  const Json doc = {{"version", 1},
                    {"backend", table.backend},
                    {"model", table.model},
                    {"seed", table.seed},
                    {"rows", rows}};
  return doc.dump(2) + "\n";
}

MetricsTable ParseJsonReport(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError("", e.what());
  }
  if (ju::AsInteger(ju::Require(doc, "version", ""), "version") != 1) {
    throw SchemaError("version", "unsupported report version");
  }
  MetricsTable table;
  table.backend = ju::AsString(ju::Require(doc, "backend", ""), "backend");
  table.model = ju::AsString(ju::Require(doc, "model", ""), "model");
  const Json& seed = ju::Require(doc, "seed", "");
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0)) {
    throw SchemaError("seed", "expected a non-negative integer");
  }
  table.seed = seed.get<std::uint64_t>();
  const Json& rows = ju::Require(doc, "rows", "");
  if (!rows.is_array()) throw SchemaError("rows", "expected an array");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string p = ju::Index("rows", i);
    const Json& r = rows[i];
    MetricsRow row;
    row.task = ju::AsString(ju::Require(r, "task", p), ju::Join(p, "task"));
    row.strategy = ju::AsString(ju::Require(r, "strategy", p), ju::Join(p, "strategy"));
    row.modalities = ju::AsString(ju::Require(r, "modalities", p), ju::Join(p, "modalities"));
    const Json& trials = ju::Require(r, "trials", p);
    for (std::size_t k = 0; k < trials.size(); ++k) {
      const std::string tp = ju::Index(ju::Join(p, "trials"), k);
      const Json& t = trials[k];
      TrialRecord rec;
      rec.recording = ju::AsString(ju::Require(t, "recording", tp), ju::Join(tp, "recording"));
      rec.trial = static_cast<std::size_t>(ju::AsInteger(ju::Require(t, "trial", tp), ju::Join(tp, "trial")));
      rec.outcome.metrics.exact_match = ju::Require(t, "exact_match", tp).get<bool>();
      rec.outcome.metrics.similarity = ju::AsNumber(ju::Require(t, "similarity", tp), ju::Join(tp, "similarity"));
      rec.outcome.failed = ju::Require(t, "failed", tp).get<bool>();
      rec.outcome.note = ju::AsString(ju::Require(t, "note", tp), ju::Join(tp, "note"));
      rec.outcome.query_count =
          static_cast<std::size_t>(ju::AsInteger(ju::Require(t, "queries", tp), ju::Join(tp, "queries")));
      row.trials.push_back(std::move(rec));
    }
    Finalize(row);
    // The stored means must agree with the trials they summarize.
    const double acc = ju::AsNumber(ju::Require(r, "accuracy", p), ju::Join(p, "accuracy"));
    const double sim = ju::AsNumber(ju::Require(r, "similarity", p), ju::Join(p, "similarity"));
    if (acc != row.mean_accuracy) throw SchemaError(ju::Join(p, "accuracy"), "does not match per-trial values");
    if (sim != row.mean_similarity) throw SchemaError(ju::Join(p, "similarity"), "does not match per-trial values");
    table.rows.push_back(std::move(row));
  }
  return table;
}

void WriteReports(const MetricsTable& table, const std::filesystem::path& dir) {
  WriteTextFile(dir / "metrics.csv", EmitCsv(table));
  WriteTextFile(dir / "metrics.json", EmitJson(table));
}

}  // namespace modalchain
