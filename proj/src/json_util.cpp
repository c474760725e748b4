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

#include "modalchain/json_util.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace modalchain {

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path.string());
  return ss.str();
}

void WriteTextFile(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

Json ReadJsonFile(const std::filesystem::path& path) {
  const std::string text = ReadTextFile(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError(path.filename().string(), std::string("invalid JSON: ") + e.what());
  }
}

namespace json_util {

std::string Join(std::string_view path, std::string_view key) {
  if (path.empty()) return std::string(key);
  return std::string(path) + "." + std::string(key);
}

std::string Index(std::string_view path, std::size_t i) {
  return std::string(path) + "[" + std::to_string(i) + "]";
}

const Json* Find(const Json& obj, std::string_view key) {
  if (!obj.is_object()) return nullptr;
  auto it = obj.find(std::string(key));
  if (it == obj.end() || it->is_null()) return nullptr;
  return &*it;
}

const Json& Require(const Json& obj, std::string_view key, std::string_view path) {
  if (!obj.is_object()) throw SchemaError(std::string(path.empty() ? "$" : path), "expected object");
  const Json* v = Find(obj, key);
  if (v == nullptr) throw SchemaError(Join(path, key), "missing required field");
  return *v;
}

double AsNumber(const Json& v, std::string_view path) {
  if (!v.is_number()) throw SchemaError(std::string(path), "expected number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw SchemaError(std::string(path), "non-finite number");
  return d;
}

long long AsInteger(const Json& v, std::string_view path) {
  if (v.is_number_integer()) return v.get<long long>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::isfinite(d) && std::floor(d) == d) return static_cast<long long>(d);
  }
  throw SchemaError(std::string(path), "expected integer");
}

std::string AsString(const Json& v, std::string_view path) {
  if (!v.is_string()) throw SchemaError(std::string(path), "expected string");
  return v.get<std::string>();
}

std::vector<double> AsNumberArray(const Json& v, std::string_view path) {
  if (!v.is_array()) throw SchemaError(std::string(path), "expected array");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(AsNumber(v[i], Index(path, i)));
  return out;
}

std::vector<std::string> AsStringArray(const Json& v, std::string_view path) {
  if (!v.is_array()) throw SchemaError(std::string(path), "expected array");
  std::vector<std::string> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(AsString(v[i], Index(path, i)));
  return out;
}

}  // namespace json_util
}  // namespace modalchain
