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

#ifndef MODALCHAIN_DIGEST_HPP_
#define MODALCHAIN_DIGEST_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace modalchain {

// Lowercase hex SHA-256.
std::string Sha256Hex(std::string_view data);
// Digest of a file's bytes, or nullopt when it cannot be read.
std::optional<std::string> FileSha256(const std::filesystem::path& path);
std::string Base64Encode(std::string_view data);

}  // namespace modalchain

#endif  // MODALCHAIN_DIGEST_HPP_
