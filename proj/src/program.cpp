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

#include "modalchain/program.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <limits>
#include <optional>

#include "modalchain/alias.hpp"
#include "modalchain/common.hpp"

namespace modalchain {

namespace {

using Kind = ProgramError::Kind;

enum class Tok { kName, kInt, kString, kLParen, kRParen, kComma, kColon, kOp, kEnd };

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  long long ival = 0;
  int col = 0;  // 1-based
};

constexpr std::array<std::string_view, 24> kKeywords = {
    "if",     "elif",   "else",  "while", "def",    "class",  "lambda", "return",
    "with",   "try",    "except", "finally", "raise", "global", "nonlocal", "del",
    "pass",   "assert", "yield", "async", "await",  "break",  "continue", "import"};

std::string OpConstruct(std::string_view op) {
  const char c = op.empty() ? '?' : op[0];
  switch (c) {
    case '=': return "assignment";
    case '.': return "attribute access";
    case '+':
    case '-':
    case '*':
    case '/':
    case '%': return "arithmetic";
    case '[':
    case ']': return "subscript or list literal";
    case '{':
    case '}': return "dict or set literal";
    case '<':
    case '>':
    case '!': return "comparison";
    case '&':
    case '|':
    case '^':
    case '~': return "bitwise operation";
    case ';': return "multiple statements on one line";
    case '@': return "decorator";
    case '\\': return "line continuation";
    default: return "unsupported token '" + std::string(op) + "'";
  }
}

std::vector<Token> Lex(std::string_view line, int line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    const auto uc = static_cast<unsigned char>(c);
    const int col = static_cast<int>(i) + 1;
    if (c == ' ' || c == '\t') {
      ++i;
      continue;
    }
    if (c == '#') break;
    if (uc >= 0x80 || (uc < 0x20)) {
      throw ProgramError(Kind::kLexical, line_no, col, "invalid character outside string literal");
    }
    if (std::isalpha(uc) || c == '_') {
      std::size_t j = i;
      while (j < line.size() &&
             (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_')) {
        ++j;
      }
      if (j < line.size() && (line[j] == '\'' || line[j] == '"')) {
        throw ProgramError(Kind::kDisallowed, line_no, col, "disallowed construct: prefixed string literal");
      }
      out.push_back({Tok::kName, std::string(line.substr(i, j - i)), 0, col});
      i = j;
      continue;
    }
    if (std::isdigit(uc)) {
      std::size_t j = i;
      while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
      if (j < line.size() && (line[j] == '.' || std::isalpha(static_cast<unsigned char>(line[j])) ||
                              line[j] == '_')) {
        throw ProgramError(Kind::kDisallowed, line_no, col, "disallowed construct: non-integer literal");
      }
      Token t{Tok::kInt, std::string(line.substr(i, j - i)), 0, col};
      auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, t.ival);
      if (ec != std::errc() || ptr != line.data() + j) {
        throw ProgramError(Kind::kLexical, line_no, col, "integer literal out of range");
      }
      out.push_back(std::move(t));
      i = j;
      continue;
    }
    if (c == '\'' || c == '"') {
      if (line.substr(i, 3) == std::string(3, c)) {
        throw ProgramError(Kind::kDisallowed, line_no, col, "disallowed construct: triple-quoted string");
      }
      std::size_t j = i + 1;
      while (j < line.size() && line[j] != c) {
        if (line[j] == '\\') {
          throw ProgramError(Kind::kLexical, line_no, static_cast<int>(j) + 1,
                             "escape sequences are not supported in string literals");
        }
        ++j;
      }
      if (j >= line.size()) throw ProgramError(Kind::kLexical, line_no, col, "unterminated string literal");
      out.push_back({Tok::kString, std::string(line.substr(i + 1, j - i - 1)), 0, col});
      i = j + 1;
      continue;
    }
    switch (c) {
      case '(': out.push_back({Tok::kLParen, "(", 0, col}); break;
      case ')': out.push_back({Tok::kRParen, ")", 0, col}); break;
      case ',': out.push_back({Tok::kComma, ",", 0, col}); break;
      case ':': out.push_back({Tok::kColon, ":", 0, col}); break;
      default: out.push_back({Tok::kOp, std::string(1, c), 0, col}); break;
    }
    ++i;
  }
  out.push_back({Tok::kEnd, "", 0, static_cast<int>(line.size()) + 1});
  return out;
}

class LineParser {
 public:
  LineParser(std::vector<Token> toks, int line) : toks_(std::move(toks)), line_(line) {}

  const Token& Peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& Next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  bool AtEnd() const { return Peek().kind == Tok::kEnd; }

  [[noreturn]] void Disallow(const Token& at, const std::string& construct) const {
    throw ProgramError(Kind::kDisallowed, line_, at.col, "disallowed construct: " + construct);
  }

  // Explains why the token at the cursor cannot continue the statement.
  [[noreturn]] void Unexpected(const Token& t) const {
    if (t.kind == Tok::kOp) Disallow(t, OpConstruct(t.text));
    if (t.kind == Tok::kEnd) Disallow(t, "incomplete statement");
    if (t.kind == Tok::kColon) Disallow(t, "block statement");
    Disallow(t, "unexpected '" + t.text + "'");
  }

  void Expect(Tok kind) {
    if (Peek().kind != kind) Unexpected(Peek());
    Next();
  }

  ScalarArg ParseScalar() {
    const Token& t = Peek();
    if (t.kind == Tok::kString) {
      Next();
      return StrArg{t.text};
    }
    if (t.kind == Tok::kInt) {
      Next();
      return IntArg{t.ival};
    }
    if (t.kind == Tok::kName) {
      if (Peek(1).kind == Tok::kLParen) Disallow(t, "nested call inside Find");
      if (Peek(1).kind == Tok::kOp && Peek(1).text == "=") Disallow(t, "keyword argument");
      Disallow(t, "bare name '" + t.text + "'");
    }
    Unexpected(t);
  }

  Arg ParseArg() {
    const Token& t = Peek();
    if (t.kind == Tok::kName && Peek(1).kind == Tok::kLParen) {
      if (t.text != "Find") Disallow(t, "nested call to '" + t.text + "'");
      Next();
      Next();
      FindCall find;
      ParseArgList([&] { find.args.push_back(ParseScalar()); });
      return find;
    }
    ScalarArg s = ParseScalar();
    if (auto* str = std::get_if<StrArg>(&s)) return *str;
    return std::get<IntArg>(s);
  }

  // Parses `a, b, c)` after an opening parenthesis.
  template <typename F>
  void ParseArgList(F&& parse_one) {
    if (Peek().kind == Tok::kRParen) {
      Next();
      return;
    }
    while (true) {
      parse_one();
      const Token& t = Peek();
      if (t.kind == Tok::kComma) {
        Next();
        if (Peek().kind == Tok::kRParen) {
          Next();
          return;
        }
        continue;
      }
      if (t.kind == Tok::kRParen) {
        Next();
        return;
      }
      Unexpected(t);
    }
  }

  Call ParseCall() {
    Call call;
    call.name = Next().text;
    call.line = line_;
    Expect(Tok::kLParen);
    ParseArgList([&] { call.args.push_back(ParseArg()); });
    if (!AtEnd()) Unexpected(Peek());
    return call;
  }

  long long ParseLoopHeader() {
    Next();  // for
    const Token& var = Next();
    if (var.kind != Tok::kName) Unexpected(var);
    const Token& in = Next();
    if (in.kind != Tok::kName || in.text != "in") Unexpected(in);
    const Token& range = Next();
    if (range.kind != Tok::kName || range.text != "range" || Peek().kind != Tok::kLParen) {
      Disallow(range, "loop over something other than range(N)");
    }
    Next();
    const Token& n = Peek();
    if (n.kind != Tok::kInt) {
      if (n.kind == Tok::kOp) Disallow(n, OpConstruct(n.text));
      Disallow(n, "range() bound that is not an integer literal");
    }
    Next();
    if (Peek().kind == Tok::kComma) Disallow(Peek(), "range() with more than one argument");
    if (Peek().kind != Tok::kRParen) Unexpected(Peek());
    Next();
    if (Peek().kind != Tok::kColon) Unexpected(Peek());
    Next();
    if (!AtEnd()) Disallow(Peek(), "inline loop body");
    if (n.ival < 1) Disallow(n, "loop count below 1");
    return n.ival;
  }

  std::vector<std::string> ParseImport() {
    Next();  // from
    const Token& module = Next();
    if (module.kind != Tok::kName) Unexpected(module);
    if (module.text != "skills") Disallow(module, "import of module '" + module.text + "'");
    if (Peek().kind == Tok::kOp && Peek().text == ".") Disallow(Peek(), "import of module 'skills" + Peek().text + "...'");
    const Token& kw = Next();
    if (kw.kind != Tok::kName || kw.text != "import") Unexpected(kw);
    std::vector<std::string> names;
    while (true) {
      const Token& name = Next();
      if (name.kind == Tok::kOp && name.text == "*") Disallow(name, "wildcard import");
      if (name.kind != Tok::kName) Unexpected(name);
      if (Peek().kind == Tok::kName && Peek().text == "as") Disallow(Peek(), "import alias");
      names.push_back(name.text);
      if (Peek().kind == Tok::kComma) {
        Next();
        continue;
      }
      if (!AtEnd()) Unexpected(Peek());
      return names;
    }
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int line_;
};

int IndentOf(std::string_view line, int line_no) {
  int w = 0;
  for (char c : line) {
    if (c == ' ') {
      ++w;
    } else if (c == '\t') {
      throw ProgramError(Kind::kIndentation, line_no, w + 1, "tab in indentation");
    } else {
      break;
    }
  }
  return w;
}

std::string Quote(const std::string& s) {
  const char q = s.find('\'') == std::string::npos ? '\'' : '"';
  return q + s + q;
}

std::string PrintScalar(const ScalarArg& a) {
  if (const auto* s = std::get_if<StrArg>(&a)) return Quote(s->value);
  return std::to_string(std::get<IntArg>(a).value);
}

std::string PrintArg(const Arg& a) {
  if (const auto* s = std::get_if<StrArg>(&a)) return Quote(s->value);
  if (const auto* i = std::get_if<IntArg>(&a)) return std::to_string(i->value);
  const auto& f = std::get<FindCall>(a);
  std::string out = "Find(";
  for (std::size_t k = 0; k < f.args.size(); ++k) {
    if (k > 0) out += ", ";
    out += PrintScalar(f.args[k]);
  }
  return out + ")";
}

void PrintBlock(const std::vector<Stmt>& stmts, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(depth) * 4, ' ');
  for (const Stmt& s : stmts) {
    if (const auto* call = std::get_if<Call>(&s.node)) {
      out += pad + call->name + "(";
      for (std::size_t k = 0; k < call->args.size(); ++k) {
        if (k > 0) out += ", ";
        out += PrintArg(call->args[k]);
      }
      out += ")\n";
    } else {
      const auto& loop = std::get<ForLoop>(s.node);
      out += pad + "for _ in range(" + std::to_string(loop.count) + "):\n";
      PrintBlock(loop.body, depth + 1, out);
    }
  }
}

std::size_t SatMul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) return std::numeric_limits<std::size_t>::max();
  return a * b;
}

std::size_t SatAdd(std::size_t a, std::size_t b) {
  return a > std::numeric_limits<std::size_t>::max() - b ? std::numeric_limits<std::size_t>::max() : a + b;
}

const char* ArgKind(const Arg& a) {
  if (std::holds_alternative<StrArg>(a)) return "string";
  if (std::holds_alternative<IntArg>(a)) return "integer";
  return "Find(...)";
}

void CheckCall(const Call& call, const SkillRegistry& registry, std::vector<ProgramDiagnostic>& out) {
  const SkillSignature* sig = registry.Lookup(call.name);
  if (sig == nullptr) {
    out.push_back({call.line, "unknown-skill", "unknown skill '" + call.name + "'"});
    return;
  }
  const std::string name(SkillName(sig->skill));
  if (call.args.size() < sig->MinArity() || call.args.size() > sig->MaxArity()) {
    out.push_back({call.line, "arity",
                   name + " takes " + std::to_string(sig->MinArity()) +
                       (sig->MaxArity() != sig->MinArity() ? "-" + std::to_string(sig->MaxArity()) : "") +
                       " arguments, got " + std::to_string(call.args.size())});
    return;
  }
  for (std::size_t i = 0; i < call.args.size(); ++i) {
    const Arg& arg = call.args[i];
    const ParamRole role = sig->RoleAt(i);
    const std::string where = name + " argument " + std::to_string(i + 1) + " (" +
                              std::string(ParamRoleName(role)) + ")";
    const auto* str = std::get_if<StrArg>(&arg);
    const auto* num = std::get_if<IntArg>(&arg);
    const auto* find = std::get_if<FindCall>(&arg);
    if (find != nullptr && role != ParamRole::kTarget) {
      out.push_back({call.line, "misplaced-find", where + ": Find(...) only allowed where a target is expected"});
      continue;
    }
    switch (role) {
      case ParamRole::kHand:
        if (str == nullptr) {
          out.push_back({call.line, "arg-type", where + ": expected string, got " + ArgKind(arg)});
        } else if (!ParseHand(AliasTable::Builtin().Resolve(AliasCategory::kHand, str->value))) {
          out.push_back({call.line, "bad-hand", where + ": '" + str->value + "' is not 'left' or 'right'"});
        }
        break;
      case ParamRole::kDirection:
        if (str == nullptr) {
          out.push_back({call.line, "arg-type", where + ": expected string, got " + ArgKind(arg)});
        } else {
          auto d = DirectionFromName(AliasTable::Builtin().Resolve(AliasCategory::kDirection, str->value));
          if (!d || (sig->skill == Skill::kTwist && !IsRotational(*d))) {
            out.push_back({call.line, "bad-direction", where + ": '" + str->value + "' is not an allowed direction"});
          }
        }
        break;
      case ParamRole::kDegrees:
        if (num == nullptr) {
          out.push_back({call.line, "arg-type", where + ": expected integer, got " + ArgKind(arg)});
        } else if (num->value <= 0) {
          out.push_back({call.line, "bad-degrees", where + ": must be positive"});
        }
        break;
      case ParamRole::kForce:
        if (num == nullptr) {
          out.push_back({call.line, "arg-type", where + ": expected integer, got " + ArgKind(arg)});
        } else if (num->value < kMinForce || num->value > kMaxForce) {
          out.push_back({call.line, "force-out-of-bounds",
                         where + ": " + std::to_string(num->value) + " outside [0, 100]"});
        }
        break;
      case ParamRole::kObject:
      case ParamRole::kTarget:
        if (num != nullptr) {
          out.push_back({call.line, "arg-type", where + ": expected object name, got integer"});
        } else if (str != nullptr && NormalizeName(str->value).empty()) {
          out.push_back({call.line, "arg-type", where + ": empty object name"});
        } else if (find != nullptr) {
          if (find->args.size() != 1 || !std::holds_alternative<StrArg>(find->args[0]) ||
              NormalizeName(std::get<StrArg>(find->args[0]).value).empty()) {
            out.push_back({call.line, "arity", where + ": Find takes one object name"});
          }
        }
        break;
    }
  }
}

void CheckBlock(const std::vector<Stmt>& stmts, const SkillRegistry& registry,
                std::vector<ProgramDiagnostic>& out) {
  for (const Stmt& s : stmts) {
    if (const auto* call = std::get_if<Call>(&s.node)) {
      CheckCall(*call, registry, out);
    } else {
      CheckBlock(std::get<ForLoop>(s.node).body, registry, out);
    }
  }
}

}  // namespace

ProgramError::ProgramError(Kind kind, int line, int column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      kind_(kind),
      line_(line),
      column_(column) {}

ProgramAst ParseProgram(std::string_view source) {
  ProgramAst ast;
  std::vector<int> indents = {0};
  std::vector<std::vector<Stmt>*> blocks = {&ast.statements};
  ForLoop* pending_loop = nullptr;
  int pending_line = 0;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos < source.size()) {
    std::size_t eol = source.find('\n', pos);
    if (eol == std::string_view::npos) eol = source.size();
    std::string_view line = source.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::vector<Token> toks = Lex(line, line_no);
    if (toks.front().kind == Tok::kEnd) continue;  // blank or comment
    const int indent = IndentOf(line, line_no);

    if (pending_loop != nullptr) {
      if (indent <= indents.back()) {
        throw ProgramError(Kind::kIndentation, line_no, indent + 1, "expected an indented block");
      }
      indents.push_back(indent);
      blocks.push_back(&pending_loop->body);
      pending_loop = nullptr;
    } else if (indent > indents.back()) {
      throw ProgramError(Kind::kIndentation, line_no, indent + 1, "unexpected indent");
    } else {
      while (indent < indents.back()) {
        indents.pop_back();
        blocks.pop_back();
      }
      if (indent != indents.back()) {
        throw ProgramError(Kind::kIndentation, line_no, indent + 1,
                           "unindent does not match any outer indentation level");
      }
    }

    LineParser p(std::move(toks), line_no);
    const Token& first = p.Peek();
    if (first.kind != Tok::kName) p.Unexpected(first);

    if (first.text == "from") {
      if (blocks.size() > 1) p.Disallow(first, "import inside a loop");
      auto names = p.ParseImport();
      ast.imports.insert(ast.imports.end(), names.begin(), names.end());
      continue;
    }
    if (first.text == "for") {
      if (static_cast<int>(blocks.size()) > kMaxLoopDepth) p.Disallow(first, "loop nesting deeper than 2");
      ForLoop loop;
      loop.line = line_no;
      loop.count = p.ParseLoopHeader();
      blocks.back()->push_back(Stmt{std::move(loop)});
      pending_loop = &std::get<ForLoop>(blocks.back()->back().node);
      pending_line = line_no;
      continue;
    }
    for (std::string_view kw : kKeywords) {
      if (first.text == kw) p.Disallow(first, std::string(kw) + " statement");
    }
    const Token& second = p.Peek(1);
    if (second.kind == Tok::kLParen) {
      blocks.back()->push_back(Stmt{p.ParseCall()});
      continue;
    }
    if (second.kind == Tok::kOp) p.Disallow(second, OpConstruct(second.text));
    if (second.kind == Tok::kEnd) p.Disallow(first, "bare expression '" + first.text + "'");
    p.Disallow(first, "unsupported statement");
  }
  if (pending_loop != nullptr) {
    throw ProgramError(Kind::kIndentation, pending_line, 1, "expected an indented block after loop header");
  }
  return ast;
}

std::string PrintProgram(const ProgramAst& ast) {
  std::string out;
  if (!ast.imports.empty()) {
    out += "from skills import ";
    for (std::size_t i = 0; i < ast.imports.size(); ++i) {
      if (i > 0) out += ", ";
      out += ast.imports[i];
    }
    out += "\n";
  }
  PrintBlock(ast.statements, 0, out);
  return out;
}

std::size_t UnrolledCallCount(const std::vector<Stmt>& statements) {
  std::size_t total = 0;
  for (const Stmt& s : statements) {
    if (std::holds_alternative<Call>(s.node)) {
      total = SatAdd(total, 1);
    } else {
      const auto& loop = std::get<ForLoop>(s.node);
      total = SatAdd(total, SatMul(static_cast<std::size_t>(loop.count), UnrolledCallCount(loop.body)));
    }
  }
  return total;
}

std::vector<ProgramDiagnostic> Validate(const ProgramAst& ast, const SkillRegistry& registry,
                                        const ValidateOptions& options) {
  std::vector<ProgramDiagnostic> out;
  CheckBlock(ast.statements, registry, out);
  const std::size_t unrolled = UnrolledCallCount(ast.statements);
  if (unrolled > options.max_unrolled) {
    out.push_back({0, "unroll-limit",
                   "program unrolls to more than " + std::to_string(options.max_unrolled) + " calls"});
  }
  return out;
}

}  // namespace modalchain
