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

#include "modalchain/alias.hpp"

#include <cctype>

namespace modalchain {

extern const char* const kBuiltinAliasesJson;

std::string NormalizeName(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_sep = false;
  for (char c : raw) {
    const auto uc = static_cast<unsigned char>(c);
    if (c == '\'' || c == '"' || c == '`') continue;
    if (std::isspace(uc) || c == '-' || c == '_') {
      pending_sep = !out.empty();
      continue;
    }
    if (pending_sep) {
      out += '_';
      pending_sep = false;
    }
    out += static_cast<char>(std::tolower(uc));
  }
  return out;
}

namespace {

std::map<std::string, std::string> ReadSection(const Json& doc, const char* key) {
  std::map<std::string, std::string> out;
  const Json* section = json_util::Find(doc, key);
  if (section == nullptr) return out;
  if (!section->is_object()) throw SchemaError(key, "expected object");
  for (const auto& [alias, canonical] : section->items()) {
    out[NormalizeName(alias)] =
        NormalizeName(json_util::AsString(canonical, json_util::Join(key, alias)));
  }
  return out;
}

}  // namespace

const AliasTable& AliasTable::Builtin() {
  static const AliasTable table = FromJson(Json::parse(kBuiltinAliasesJson));
  return table;
}

AliasTable AliasTable::FromJson(const Json& doc) {
  AliasTable t;
  t.version_ = static_cast<int>(json_util::AsInteger(json_util::Require(doc, "version", ""), "version"));
  t.skills_ = ReadSection(doc, "skills");
  t.hands_ = ReadSection(doc, "hands");
  t.directions_ = ReadSection(doc, "directions");
  t.objects_ = ReadSection(doc, "objects");
  return t;
}

AliasTable AliasTable::Load(const std::filesystem::path& path) { return FromJson(ReadJsonFile(path)); }

const std::map<std::string, std::string>& AliasTable::Entries(AliasCategory category) const {
  switch (category) {
    case AliasCategory::kSkill: return skills_;
    case AliasCategory::kHand: return hands_;
    case AliasCategory::kDirection: return directions_;
    case AliasCategory::kObject: return objects_;
  }
  return objects_;
}

std::string AliasTable::Resolve(AliasCategory category, std::string_view name) const {
  std::string key = NormalizeName(name);
  const auto& entries = Entries(category);
  if (auto it = entries.find(key); it != entries.end()) return it->second;
  return key;
}

}  // namespace modalchain
