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

#ifndef MODALCHAIN_PROGRAM_HPP_
#define MODALCHAIN_PROGRAM_HPP_

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "modalchain/skills.hpp"

namespace modalchain {

struct StrArg {
  std::string value;
  bool operator==(const StrArg&) const = default;
};

struct IntArg {
  long long value = 0;
  bool operator==(const IntArg&) const = default;
};

using ScalarArg = std::variant<StrArg, IntArg>;

// Find('name') used as an argument. Only Find may nest.
struct FindCall {
  std::vector<ScalarArg> args;
  bool operator==(const FindCall&) const = default;
};

using Arg = std::variant<StrArg, IntArg, FindCall>;

struct Call {
  std::string name;
  std::vector<Arg> args;
  int line = 0;  // source position, ignored by ==

  bool operator==(const Call& o) const { return name == o.name && args == o.args; }
};

struct Stmt;

struct ForLoop {
  long long count = 1;
  std::vector<Stmt> body;
  int line = 0;

  bool operator==(const ForLoop& o) const;
};

struct Stmt {
  std::variant<Call, ForLoop> node;
  bool operator==(const Stmt&) const = default;
};

inline bool ForLoop::operator==(const ForLoop& o) const { return count == o.count && body == o.body; }

struct ProgramAst {
  std::vector<std::string> imports;  // names from `from skills import ...`
  std::vector<Stmt> statements;
  bool operator==(const ProgramAst&) const = default;
};

inline constexpr int kMaxLoopDepth = 2;
inline constexpr std::size_t kDefaultUnrollLimit = 1000;

class ProgramError : public std::runtime_error {
 public:
  enum class Kind { kLexical, kIndentation, kDisallowed };
  ProgramError(Kind kind, int line, int column, const std::string& what);
  Kind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  Kind kind_;
  int line_;
  int column_;
};

// Accepts `from skills import ...` headers, comments, call statements
// `Name('str' | int | Find(...), ...)` and `for _ in range(N):` loops with
// indented bodies. Everything else is rejected before anything runs.
ProgramAst ParseProgram(std::string_view source);

// Canonical source text; ParseProgram(PrintProgram(a)) == a.
std::string PrintProgram(const ProgramAst& ast);

struct ProgramDiagnostic {
  int line = 0;
  std::string code;  // e.g. "unknown-skill", "force-out-of-bounds"
  std::string message;
};

struct ValidateOptions {
  std::size_t max_unrolled = kDefaultUnrollLimit;
};

// Empty result means the program is valid against `registry`.
std::vector<ProgramDiagnostic> Validate(const ProgramAst& ast,
                                        const SkillRegistry& registry = SkillRegistry::Default(),
                                        const ValidateOptions& options = {});

// Number of calls executed after loop unrolling; saturates at SIZE_MAX.
std::size_t UnrolledCallCount(const std::vector<Stmt>& statements);

}  // namespace modalchain

#endif  // MODALCHAIN_PROGRAM_HPP_
