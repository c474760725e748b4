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

#include "modalchain/message.hpp"

#include <cmath>

#include "modalchain/backend.hpp"
#include "modalchain/digest.hpp"
#include "modalchain/format.hpp"

namespace modalchain {

std::string_view RoleName(Role r) {
  switch (r) {
    case Role::kSystem: return "system";
    case Role::kUser: return "user";
    case Role::kAssistant: return "assistant";
  }
  return "?";
}

std::optional<Role> ParseRole(std::string_view s) {
  if (s == "system") return Role::kSystem;
  if (s == "user") return Role::kUser;
  if (s == "assistant") return Role::kAssistant;
  return std::nullopt;
}

Part Part::Text(std::string text, std::optional<Modality> m) {
  return Part{TextPart{std::move(text)}, m};
}

Part Part::Image(std::string uri, std::filesystem::path path, std::optional<Modality> m) {
  ImagePart img{std::move(uri), std::move(path), {}};
  if (auto d = FileSha256(img.path)) img.content_sha256 = *d;
  return Part{std::move(img), m};
}

Part Part::Series(std::string label, std::vector<double> values, std::optional<Modality> m) {
  return Part{SeriesPart{std::move(label), std::move(values)}, m};
}

std::string Part::Render() const {
  if (const auto* t = std::get_if<TextPart>(&content)) return t->text;
  if (const auto* i = std::get_if<ImagePart>(&content)) return "[image: " + i->uri + "]";
  const auto& s = std::get<SeriesPart>(content);
  return SerializeSeries(s.label, s.values);
}

Message Message::Text(Role role, std::string text) {
  return Message{role, {Part::Text(std::move(text))}};
}

std::string Message::RenderText() const {
  std::string out;
  for (const Part& p : parts) {
    if (!out.empty()) out += '\n';
    out += p.Render();
  }
  return out;
}

std::string SerializeSeries(std::string_view label, std::span<const double> values) {
  std::string out(label);
  out += ':';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw std::invalid_argument("SerializeSeries: non-finite value");
    out += i == 0 ? " " : ", ";
    out += FormatFixed(values[i], 2);
  }
  return out;
}

Json ConversationToJson(const Conversation& conversation) {
  Json messages = Json::array();
  for (const Message& m : conversation) {
    Json parts = Json::array();
    for (const Part& p : m.parts) {
      Json pj = Json::object();
      if (const auto* t = std::get_if<TextPart>(&p.content)) {
        pj["type"] = "text";
        pj["text"] = t->text;
      } else if (const auto* i = std::get_if<ImagePart>(&p.content)) {
        pj["type"] = "image";
        pj["uri"] = i->uri;
        pj["sha256"] = i->content_sha256;
      } else {
        const auto& s = std::get<SeriesPart>(p.content);
        pj["type"] = "series";
        pj["label"] = s.label;
        pj["text"] = SerializeSeries(s.label, s.values);
      }
      if (p.modality) pj["modality"] = std::string(ModalityName(*p.modality));
      parts.push_back(std::move(pj));
    }
    messages.push_back({{"role", std::string(RoleName(m.role))}, {"parts", std::move(parts)}});
  }
  return messages;
}

namespace {

// Inverse of SerializeSeries for transcript reloading.
std::vector<double> ParseSeriesText(const std::string& text) {
  std::vector<double> out;
  const auto colon = text.find(':');
  if (colon == std::string::npos) return out;
  std::size_t pos = colon + 1;
  while (pos < text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string item = text.substr(pos, comma - pos);
    if (item.find_first_not_of(' ') != std::string::npos) out.push_back(std::stod(item));
    pos = comma + 1;
  }
  return out;
}

}  // namespace

Conversation ConversationFromJson(const Json& doc) {
  namespace ju = json_util;
  if (!doc.is_array()) throw SchemaError("messages", "expected array");
  Conversation conv;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::string path = ju::Index("messages", i);
    Message m;
    auto role = ParseRole(ju::AsString(ju::Require(doc[i], "role", path), ju::Join(path, "role")));
    if (!role) throw SchemaError(ju::Join(path, "role"), "unknown role");
    m.role = *role;
    const Json& parts = ju::Require(doc[i], "parts", path);
    for (std::size_t k = 0; k < parts.size(); ++k) {
      const std::string ppath = ju::Index(ju::Join(path, "parts"), k);
      const Json& pj = parts[k];
      const std::string type = ju::AsString(ju::Require(pj, "type", ppath), ju::Join(ppath, "type"));
      std::optional<Modality> modality;
      if (const Json* mj = ju::Find(pj, "modality")) modality = ParseModality(ju::AsString(*mj, ppath));
      Part part;
      if (type == "text") {
        part.content = TextPart{ju::AsString(ju::Require(pj, "text", ppath), ppath)};
      } else if (type == "image") {
        const std::string uri = ju::AsString(ju::Require(pj, "uri", ppath), ppath);
        part.content = ImagePart{uri, uri, ju::AsString(ju::Require(pj, "sha256", ppath), ppath)};
      } else if (type == "series") {
        const std::string text = ju::AsString(ju::Require(pj, "text", ppath), ppath);
        part.content = SeriesPart{ju::AsString(ju::Require(pj, "label", ppath), ppath),
                                  ParseSeriesText(text)};
      } else {
        throw SchemaError(ju::Join(ppath, "type"), "unknown part type '" + type + "'");
      }
      part.modality = modality;
      m.parts.push_back(std::move(part));
    }
    conv.push_back(std::move(m));
  }
  return conv;
}

void ValidateConversation(const Conversation& conversation) {
  if (conversation.empty()) {
    throw BackendError(BackendError::Kind::kPrecondition, "empty conversation");
  }
  bool has_user = false;
  for (const Message& m : conversation) {
    if (m.parts.empty()) throw BackendError(BackendError::Kind::kPrecondition, "message with no parts");
    has_user |= m.role == Role::kUser;
    for (const Part& p : m.parts) {
      if (const auto* s = std::get_if<SeriesPart>(&p.content)) {
        for (double v : s->values) {
          if (!std::isfinite(v)) {
            throw BackendError(BackendError::Kind::kPrecondition,
                               "series '" + s->label + "' has a non-finite value");
          }
        }
      }
    }
  }
  if (!has_user) throw BackendError(BackendError::Kind::kPrecondition, "conversation has no user message");
}

}  // namespace modalchain
