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

#ifndef MODALCHAIN_PLAN_HPP_
#define MODALCHAIN_PLAN_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "modalchain/alias.hpp"
#include "modalchain/common.hpp"
#include "modalchain/skills.hpp"

namespace modalchain {

struct ActionStep {
  Skill skill = Skill::kGrasp;
  std::optional<Hand> hand;
  std::optional<std::string> object;  // lowercase snake_case
  std::optional<Direction> direction;
  std::optional<double> magnitude_deg;
  std::optional<int> force;

  bool operator==(const ActionStep&) const = default;
};

// Steps [start, start + len) form one loop body, already expanded `count`
// times in ActionPlan::steps (the group spans start .. start + len*count).
struct RepeatGroup {
  std::size_t start = 0;
  std::size_t len = 0;
  std::size_t count = 0;
  bool operator==(const RepeatGroup&) const = default;
};

struct ActionPlan {
  std::vector<ActionStep> steps;
  std::vector<RepeatGroup> repeats;
  bool operator==(const ActionPlan&) const = default;
};

struct PlanDiagnostic {
  std::size_t line = 0;  // 1-based
  std::string text;
  std::string message;
};

class PlanParseError : public std::runtime_error {
 public:
  explicit PlanParseError(std::vector<PlanDiagnostic> diagnostics);
  const std::vector<PlanDiagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<PlanDiagnostic> diagnostics_;
};

struct PlanParseResult {
  ActionPlan plan;
  std::vector<PlanDiagnostic> diagnostics;  // lines that were skipped
};

// Parses one `Skill(arg, ...)` step per line. Blank lines, `#` comments,
// code fences and `from ... import` headers are ignored; list markers
// ("1.", "-") and trailing comments are stripped. `for _ in range(N):`
// followed by indented steps expands to N copies and records a RepeatGroup.
// Lines that are not steps become diagnostics. Throws PlanParseError only
// when no step parses.
PlanParseResult ParsePlan(std::string_view text,
                          const AliasTable& aliases = AliasTable::Builtin());

// Inverse of ParsePlan up to formatting: ParsePlan(RenderPlan(p)).plan == p
// for any parsed plan p.
std::string RenderPlan(const ActionPlan& plan);
std::string RenderStep(const ActionStep& step);

inline constexpr std::string_view kAbsentToken = "_";

// Six tokens per step: skill hand object direction magnitude force.
std::vector<std::string> Canonicalize(const ActionPlan& plan,
                                      const AliasTable& aliases = AliasTable::Builtin());

bool ExactMatch(const ActionPlan& pred, const ActionPlan& gt,
                const AliasTable& aliases = AliasTable::Builtin());

// Longest common contiguous run of canonical tokens divided by the ground
// truth token count. Throws std::invalid_argument on an empty ground truth.
double Similarity(const ActionPlan& pred, const ActionPlan& gt,
                  const AliasTable& aliases = AliasTable::Builtin());

struct PlanMetrics {
  bool exact_match = false;
  double similarity = 0.0;
};

PlanMetrics ScorePlan(const ActionPlan& pred, const ActionPlan& gt,
                      const AliasTable& aliases = AliasTable::Builtin());

// Distinct object names mentioned by a plan, in first-seen order.
std::vector<std::string> PlanObjects(const ActionPlan& plan);

}  // namespace modalchain

#endif  // MODALCHAIN_PLAN_HPP_
