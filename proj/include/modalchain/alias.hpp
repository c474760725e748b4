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

#ifndef MODALCHAIN_ALIAS_HPP_
#define MODALCHAIN_ALIAS_HPP_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "modalchain/json_util.hpp"

namespace modalchain {

// Lowercase snake_case form of a free-text name: trims, strips quotes,
// folds whitespace and '-' to '_', collapses repeats. "Power Strip" ->
// "power_strip".
std::string NormalizeName(std::string_view raw);

enum class AliasCategory { kSkill, kHand, kDirection, kObject };

// Versioned synonym table mapping open-vocabulary spellings onto canonical
// names. Unknown names pass through (normalized) unchanged.
class AliasTable {
 public:
  AliasTable() = default;

  // The table shipped in data/aliases.json, compiled into the library.
  static const AliasTable& Builtin();
  static AliasTable FromJson(const Json& doc);
  static AliasTable Load(const std::filesystem::path& path);

  int version() const { return version_; }
  std::string Resolve(AliasCategory category, std::string_view name) const;
  const std::map<std::string, std::string>& Entries(AliasCategory category) const;

  bool operator==(const AliasTable&) const = default;

 private:
  int version_ = 0;
  std::map<std::string, std::string> skills_;
  std::map<std::string, std::string> hands_;
  std::map<std::string, std::string> directions_;
  std::map<std::string, std::string> objects_;
};

}  // namespace modalchain

#endif  // MODALCHAIN_ALIAS_HPP_
