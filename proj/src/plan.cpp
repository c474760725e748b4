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

#include "modalchain/plan.hpp"

#include <charconv>
#include <cmath>
#include <regex>

#include "modalchain/lcs.hpp"

namespace modalchain {

namespace {

std::string_view Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::size_t IndentWidth(std::string_view line) {
  std::size_t w = 0;
  for (char c : line) {
    if (c == ' ') {
      ++w;
    } else if (c == '\t') {
      w += 4;
    } else {
      break;
    }
  }
  return w;
}

// Drops a trailing `# ...` comment that is not inside quotes.
std::string_view StripComment(std::string_view s) {
  char quote = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '\'' || c == '"') {
      quote = c;
    } else if (c == '#') {
      return s.substr(0, i);
    }
  }
  return s;
}

std::string_view StripListMarker(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i > 0 && i < s.size() && (s[i] == '.' || s[i] == ')')) return Trim(s.substr(i + 1));
  if (!s.empty() && (s[0] == '-' || s[0] == '*' || s[0] == '+') && s.size() > 1 && s[1] == ' ') {
    return Trim(s.substr(1));
  }
  return s;
}

std::optional<double> AsNumber(std::string_view s) {
  double v = 0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::vector<std::string> SplitArgs(std::string_view s, std::string* error) {
  std::vector<std::string> out;
  if (Trim(s).empty()) return out;
  int depth = 0;
  char quote = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    const char c = i < s.size() ? s[i] : ',';
    if (quote) {
      if (c == quote) quote = 0;
      if (i == s.size()) {
        *error = "unterminated string";
        return {};
      }
      continue;
    }
    if (c == '\'' || c == '"') {
      quote = c;
    } else if (c == '(') {
      ++depth;
    } else if (c == ')') {
      --depth;
    } else if (c == ',' && depth == 0) {
      out.emplace_back(Trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

struct ArgValue {
  std::string text;
  std::optional<double> number;
};

// Unquotes an argument and unwraps Find('x') to x.
std::optional<ArgValue> ReadArg(std::string_view raw, std::string* error) {
  std::string_view s = Trim(raw);
  if (auto eq = s.find('='); eq != std::string_view::npos && s.find_first_of("'\"(") > eq) {
    s = Trim(s.substr(eq + 1));  // keyword form: key=value
  }
  static const std::regex kFind(R"(^[Ff]ind\s*\((.*)\)$)");
  std::string str(s);
  std::smatch m;
  if (std::regex_match(str, m, kFind)) str = std::string(Trim(m[1].str()));
  if (str.find('(') != std::string::npos) {
    *error = "nested call other than Find in argument '" + std::string(raw) + "'";
    return std::nullopt;
  }
  if (str.size() >= 2 && (str.front() == '\'' || str.front() == '"') && str.back() == str.front()) {
    str = str.substr(1, str.size() - 2);
  }
  ArgValue v;
  v.text = std::string(Trim(str));
  v.number = AsNumber(v.text);
  if (v.text.empty()) {
    *error = "empty argument";
    return std::nullopt;
  }
  return v;
}

bool IsObjectRole(ParamRole r) { return r == ParamRole::kObject || r == ParamRole::kTarget; }

// Returns an error message, or empty on success.
std::string Assign(ActionStep& step, ParamRole role, const ArgValue& arg,
                   const AliasTable& aliases) {
  switch (role) {
    case ParamRole::kHand: {
      auto h = ParseHand(aliases.Resolve(AliasCategory::kHand, arg.text));
      if (!h) return "expected hand (left|right), got '" + arg.text + "'";
      step.hand = *h;
      return {};
    }
    case ParamRole::kDirection: {
      auto d = DirectionFromName(aliases.Resolve(AliasCategory::kDirection, arg.text));
      if (!d) return "unknown direction '" + arg.text + "'";
      step.direction = *d;
      return {};
    }
    case ParamRole::kDegrees:
      if (!arg.number || *arg.number <= 0) return "expected positive degrees, got '" + arg.text + "'";
      step.magnitude_deg = *arg.number;
      return {};
    case ParamRole::kForce:
      if (!arg.number || std::floor(*arg.number) != *arg.number || *arg.number < kMinForce ||
          *arg.number > kMaxForce) {
        return "expected integer force in [0, 100], got '" + arg.text + "'";
      }
      step.force = static_cast<int>(*arg.number);
      return {};
    case ParamRole::kObject:
    case ParamRole::kTarget: {
      if (arg.number) return "expected object name, got '" + arg.text + "'";
      std::string name = NormalizeName(arg.text);
      if (name.empty()) return "empty object name";
      step.object = std::move(name);
      return {};
    }
  }
  return "unhandled parameter";
}

std::optional<ActionStep> ParseStepLine(std::string_view content, const AliasTable& aliases,
                                        std::string* error) {
  static const std::regex kCall(R"(^([A-Za-z_][A-Za-z0-9_]*)\s*\((.*)\)$)");
  std::string line(content);
  std::smatch m;
  if (!std::regex_match(line, m, kCall)) {
    *error = "not a skill call";
    return std::nullopt;
  }
  const std::string token = aliases.Resolve(AliasCategory::kSkill, m[1].str());
  const SkillSignature* sig = SkillRegistry::Default().Lookup(token);
  if (sig == nullptr) {
    *error = "unknown skill '" + m[1].str() + "'";
    return std::nullopt;
  }
  const std::vector<std::string> raw_args = SplitArgs(m[2].str(), error);
  if (!error->empty()) return std::nullopt;

  std::vector<ArgValue> args;
  for (const auto& raw : raw_args) {
    auto v = ReadArg(raw, error);
    if (!v) return std::nullopt;
    args.push_back(std::move(*v));
  }

  ActionStep step;
  step.skill = sig->skill;
  std::size_t next = 0;
  for (std::size_t p = 0; p < sig->MaxArity(); ++p) {
    const ParamRole role = sig->RoleAt(p);
    const bool optional = p >= sig->MinArity();
    if (next >= args.size()) {
      if (!optional) {
        *error = std::string(SkillName(sig->skill)) + ": missing " +
                 std::string(ParamRoleName(role));
        return std::nullopt;
      }
      break;
    }
    if (optional && IsObjectRole(role) && args[next].number) continue;
    if (std::string msg = Assign(step, role, args[next], aliases); !msg.empty()) {
      *error = std::string(SkillName(sig->skill)) + ": " + msg;
      return std::nullopt;
    }
    ++next;
  }
  if (next < args.size()) {
    *error = std::string(SkillName(sig->skill)) + ": too many arguments";
    return std::nullopt;
  }
  return step;
}

std::string FormatNumber(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

PlanParseError::PlanParseError(std::vector<PlanDiagnostic> diagnostics)
    : std::runtime_error("plan contains no parseable steps (" +
                         std::to_string(diagnostics.size()) + " diagnostics)"),
      diagnostics_(std::move(diagnostics)) {}

PlanParseResult ParsePlan(std::string_view text, const AliasTable& aliases) {
  static const std::regex kLoop(R"(^for\s+\w+\s+in\s+range\s*\(\s*(\d+)\s*\)\s*:$)");

  PlanParseResult result;
  auto& steps = result.plan.steps;

  struct OpenLoop {
    std::size_t indent;
    std::size_t count;
    std::size_t start;
    std::size_t line;
  };
  std::optional<OpenLoop> loop;

  auto close_loop = [&]() {
    if (!loop) return;
    const std::size_t len = steps.size() - loop->start;
    if (len == 0) {
      result.diagnostics.push_back({loop->line, "", "loop has no steps"});
    } else if (loop->count == 0) {
      steps.resize(loop->start);
    } else {
      const std::vector<ActionStep> body(steps.begin() + static_cast<std::ptrdiff_t>(loop->start),
                                         steps.end());
      for (std::size_t c = 1; c < loop->count; ++c) steps.insert(steps.end(), body.begin(), body.end());
      result.plan.repeats.push_back({loop->start, len, loop->count});
    }
    loop.reset();
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view raw = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    std::string_view content = Trim(StripComment(raw));
    if (content.empty() || content.starts_with("```")) continue;
    if (content.starts_with("from ") && content.find(" import ") != std::string_view::npos) continue;

    const std::size_t indent = IndentWidth(raw);
    if (loop && indent <= loop->indent) close_loop();

    content = StripListMarker(content);
    while (!content.empty() && (content.back() == ';' || content.back() == ',')) {
      content = Trim(content.substr(0, content.size() - 1));
    }

    std::string line(content);
    std::smatch m;
    if (std::regex_match(line, m, kLoop)) {
      if (loop) {
        result.diagnostics.push_back({line_no, line, "nested loops are not supported in plans"});
        continue;
      }
      loop = OpenLoop{indent, std::stoul(m[1].str()), steps.size(), line_no};
      continue;
    }

    std::string error;
    if (auto step = ParseStepLine(content, aliases, &error)) {
      steps.push_back(std::move(*step));
    } else {
      result.diagnostics.push_back({line_no, line, error});
    }
  }
  close_loop();

  if (steps.empty()) throw PlanParseError(std::move(result.diagnostics));
  return result;
}

std::string RenderStep(const ActionStep& step) {
  const SkillSignature* sig = SkillRegistry::Default().Lookup(step.skill);
  std::vector<std::string> args;
  std::size_t last_present = 0;
  for (std::size_t p = 0; p < sig->MaxArity(); ++p) {
    std::optional<std::string> value;
    switch (sig->RoleAt(p)) {
      case ParamRole::kHand:
        if (step.hand) value = std::string(HandName(*step.hand));
        break;
      case ParamRole::kObject:
      case ParamRole::kTarget:
        value = step.object;
        break;
      case ParamRole::kDirection:
        if (step.direction) value = std::string(DirectionName(*step.direction));
        break;
      case ParamRole::kDegrees:
        if (step.magnitude_deg) value = FormatNumber(*step.magnitude_deg);
        break;
      case ParamRole::kForce:
        if (step.force) value = std::to_string(*step.force);
        break;
    }
    if (value) {
      args.resize(p + 1);
      args[p] = std::move(*value);
      last_present = p + 1;
    } else {
      args.resize(p + 1);
    }
  }
  std::string out(SkillName(step.skill));
  out += '(';
  bool first = true;
  for (std::size_t p = 0; p < last_present; ++p) {
    if (args[p].empty()) continue;  // skipped optional slot
    if (!first) out += ", ";
    out += args[p];
    first = false;
  }
  out += ')';
  return out;
}

std::string RenderPlan(const ActionPlan& plan) {
  std::string out;
  std::size_t i = 0;
  while (i < plan.steps.size()) {
    const RepeatGroup* group = nullptr;
    for (const auto& g : plan.repeats) {
      if (g.start == i && g.len > 0) group = &g;
    }
    if (group) {
      out += "for _ in range(" + std::to_string(group->count) + "):\n";
      for (std::size_t k = 0; k < group->len; ++k) out += "    " + RenderStep(plan.steps[i + k]) + "\n";
      i += group->len * group->count;
    } else {
      out += RenderStep(plan.steps[i]) + "\n";
      ++i;
    }
  }
  return out;
}

std::vector<std::string> Canonicalize(const ActionPlan& plan, const AliasTable& aliases) {
  std::vector<std::string> tokens;
  tokens.reserve(plan.steps.size() * 6);
  for (const ActionStep& s : plan.steps) {
    tokens.emplace_back(SkillToken(s.skill));
    tokens.emplace_back(s.hand ? HandName(*s.hand) : kAbsentToken);
    tokens.emplace_back(s.object ? aliases.Resolve(AliasCategory::kObject, *s.object)
                                 : std::string(kAbsentToken));
    tokens.emplace_back(s.direction ? DirectionName(*s.direction) : kAbsentToken);
    tokens.emplace_back(s.magnitude_deg ? FormatNumber(*s.magnitude_deg) : std::string(kAbsentToken));
    tokens.emplace_back(s.force ? std::to_string(*s.force) : std::string(kAbsentToken));
  }
  return tokens;
}

bool ExactMatch(const ActionPlan& pred, const ActionPlan& gt, const AliasTable& aliases) {
  return Canonicalize(pred, aliases) == Canonicalize(gt, aliases);
}

double Similarity(const ActionPlan& pred, const ActionPlan& gt, const AliasTable& aliases) {
  const auto gt_tokens = Canonicalize(gt, aliases);
  if (gt_tokens.empty()) throw std::invalid_argument("Similarity: empty ground truth");
  const auto pred_tokens = Canonicalize(pred, aliases);
  const std::size_t run = LongestCommonSubstring(pred_tokens, gt_tokens);
  return static_cast<double>(run) / static_cast<double>(gt_tokens.size());
}

PlanMetrics ScorePlan(const ActionPlan& pred, const ActionPlan& gt, const AliasTable& aliases) {
  PlanMetrics m;
  m.exact_match = ExactMatch(pred, gt, aliases);
  m.similarity = Similarity(pred, gt, aliases);
  return m;
}

std::vector<std::string> PlanObjects(const ActionPlan& plan) {
  std::vector<std::string> out;
  for (const auto& s : plan.steps) {
    if (s.object && std::find(out.begin(), out.end(), *s.object) == out.end()) out.push_back(*s.object);
  }
  return out;
}

}  // namespace modalchain
