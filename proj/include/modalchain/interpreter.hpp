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

#ifndef MODALCHAIN_INTERPRETER_HPP_
#define MODALCHAIN_INTERPRETER_HPP_

#include <stdexcept>
#include <string>
#include <vector>

#include "modalchain/program.hpp"
#include "modalchain/world.hpp"

namespace modalchain {

struct InterpretOptions {
  bool halt_on_failure = true;  // stop at the first failed call
  std::size_t max_unrolled = kDefaultUnrollLimit;
  const ObjectLocator* locator = nullptr;
};

// Raised when asked to run a program that does not validate.
class InvalidProgram : public std::runtime_error {
 public:
  explicit InvalidProgram(std::vector<ProgramDiagnostic> diagnostics);
  const std::vector<ProgramDiagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<ProgramDiagnostic> diagnostics_;
};

// Typed form of a validated call. Names are normalized and aliases applied.
SkillCall ResolveCall(const Call& call);

// Runs `ast` against `world`, unrolling loops. The only effects are
// ApplySkill calls on `world`; each one appends an event to the trace.
EventTrace Interpret(const ProgramAst& ast, WorldState& world, const InterpretOptions& options = {},
                     const std::string& task_id = "");

}  // namespace modalchain

#endif  // MODALCHAIN_INTERPRETER_HPP_
