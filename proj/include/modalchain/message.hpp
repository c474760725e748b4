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

#ifndef MODALCHAIN_MESSAGE_HPP_
#define MODALCHAIN_MESSAGE_HPP_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "modalchain/common.hpp"
#include "modalchain/json_util.hpp"

namespace modalchain {

enum class Role { kSystem, kUser, kAssistant };

std::string_view RoleName(Role r);
std::optional<Role> ParseRole(std::string_view s);

struct TextPart {
  std::string text;
};

// An image passed by reference. `content_sha256` is empty when the file
// could not be read at construction time.
struct ImagePart {
  std::string uri;
  std::filesystem::path path;
  std::string content_sha256;
};

struct SeriesPart {
  std::string label;
  std::vector<double> values;
};

struct Part {
  std::variant<TextPart, ImagePart, SeriesPart> content;
  // Which demonstration modality this part carries, if any.
  std::optional<Modality> modality;

  static Part Text(std::string text, std::optional<Modality> m = std::nullopt);
  static Part Image(std::string uri, std::filesystem::path path,
                    std::optional<Modality> m = Modality::kImage);
  static Part Series(std::string label, std::vector<double> values,
                     std::optional<Modality> m = Modality::kForce);

  bool IsText() const { return std::holds_alternative<TextPart>(content); }
  bool IsImage() const { return std::holds_alternative<ImagePart>(content); }
  bool IsSeries() const { return std::holds_alternative<SeriesPart>(content); }
  // What a text-only reader sees for this part.
  std::string Render() const;
};

struct Message {
  Role role = Role::kUser;
  std::vector<Part> parts;

  static Message Text(Role role, std::string text);
  std::string RenderText() const;
};

using Conversation = std::vector<Message>;

// `label: v0, v1, ...` with two decimals per value, rounded half up.
// Throws std::invalid_argument on non-finite values.
std::string SerializeSeries(std::string_view label, std::span<const double> values);

// Canonical JSON form used for hashing and transcripts.
Json ConversationToJson(const Conversation& conversation);
Conversation ConversationFromJson(const Json& doc);

// Throws BackendError(kPrecondition) for an empty conversation, one with
// no user message, empty messages, or non-finite series values.
void ValidateConversation(const Conversation& conversation);

}  // namespace modalchain

#endif  // MODALCHAIN_MESSAGE_HPP_
