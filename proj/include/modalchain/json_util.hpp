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

#ifndef MODALCHAIN_JSON_UTIL_HPP_
#define MODALCHAIN_JSON_UTIL_HPP_

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace modalchain {

using Json = nlohmann::ordered_json;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A document that does not match its expected schema. `field_path` names the
// offending field, e.g. "frames[3].timestamp_s".
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string field_path, const std::string& what)
      : std::runtime_error(field_path + ": " + what),
        field_path_(std::move(field_path)) {}
  const std::string& field_path() const { return field_path_; }

 private:
  std::string field_path_;
};

std::string ReadTextFile(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path, std::string_view text);
Json ReadJsonFile(const std::filesystem::path& path);

namespace json_util {

std::string Join(std::string_view path, std::string_view key);
std::string Index(std::string_view path, std::size_t i);

const Json& Require(const Json& obj, std::string_view key, std::string_view path);
const Json* Find(const Json& obj, std::string_view key);

double AsNumber(const Json& v, std::string_view path);
long long AsInteger(const Json& v, std::string_view path);
std::string AsString(const Json& v, std::string_view path);
std::vector<double> AsNumberArray(const Json& v, std::string_view path);
std::vector<std::string> AsStringArray(const Json& v, std::string_view path);

}  // namespace json_util
}  // namespace modalchain

#endif  // MODALCHAIN_JSON_UTIL_HPP_
