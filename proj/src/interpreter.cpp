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

#include "modalchain/interpreter.hpp"

#include "modalchain/alias.hpp"

namespace modalchain {

namespace {

std::string CallText(const Call& call) {
  ProgramAst one;
  one.statements.push_back(Stmt{call});
  std::string text = PrintProgram(one);
  if (!text.empty() && text.back() == '\n') text.pop_back();
  return text;
}

const std::string& StringOf(const Arg& a) {
  if (const auto* f = std::get_if<FindCall>(&a)) return std::get<StrArg>(f->args.at(0)).value;
  return std::get<StrArg>(a).value;
}

// Returns false once execution should stop.
bool RunBlock(const std::vector<Stmt>& stmts, WorldState& world, const InterpretOptions& options,
              EventTrace& trace) {
  for (const Stmt& s : stmts) {
    if (const auto* call = std::get_if<Call>(&s.node)) {
      const Event& e = trace.Append(ApplySkill(world, ResolveCall(*call), options.locator));
      if (!e.ok && options.halt_on_failure) return false;
      continue;
    }
    const auto& loop = std::get<ForLoop>(s.node);
    for (long long i = 0; i < loop.count; ++i) {
      if (!RunBlock(loop.body, world, options, trace)) return false;
    }
  }
  return true;
}

std::string Describe(const std::vector<ProgramDiagnostic>& diags) {
  std::string out = "program failed validation";
  for (const auto& d : diags) out += "; line " + std::to_string(d.line) + " " + d.code + ": " + d.message;
  return out;
}

}  // namespace

InvalidProgram::InvalidProgram(std::vector<ProgramDiagnostic> diagnostics)
    : std::runtime_error(Describe(diagnostics)), diagnostics_(std::move(diagnostics)) {}

SkillCall ResolveCall(const Call& call) {
  const SkillSignature* sig = SkillRegistry::Default().Lookup(call.name);
  if (sig == nullptr) throw InvalidProgram({{call.line, "unknown-skill", "unknown skill '" + call.name + "'"}});
  const AliasTable& aliases = AliasTable::Builtin();
  SkillCall out;
  out.skill = sig->skill;
  out.text = CallText(call);
  for (std::size_t i = 0; i < call.args.size(); ++i) {
    const Arg& arg = call.args[i];
    switch (sig->RoleAt(i)) {
      case ParamRole::kHand:
        out.hand = ParseHand(aliases.Resolve(AliasCategory::kHand, StringOf(arg)));
        break;
      case ParamRole::kObject:
      case ParamRole::kTarget:
        out.object = NormalizeName(StringOf(arg));
        break;
      case ParamRole::kDirection:
        out.direction = DirectionFromName(aliases.Resolve(AliasCategory::kDirection, StringOf(arg)));
        break;
      case ParamRole::kDegrees:
        out.degrees = std::get<IntArg>(arg).value;
        break;
      case ParamRole::kForce:
        out.force = static_cast<int>(std::get<IntArg>(arg).value);
        break;
    }
  }
  return out;
}

EventTrace Interpret(const ProgramAst& ast, WorldState& world, const InterpretOptions& options,
                     const std::string& task_id) {
  auto diags = Validate(ast, SkillRegistry::Default(), ValidateOptions{options.max_unrolled});
  if (!diags.empty()) throw InvalidProgram(std::move(diags));
  EventTrace trace(task_id);
  RunBlock(ast.statements, world, options, trace);
  return trace;
}

}  // namespace modalchain
