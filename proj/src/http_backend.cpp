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

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "modalchain/http_backend.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

#include "httplib.h"
#include "modalchain/digest.hpp"

namespace modalchain {

namespace {

std::string MediaType(const std::filesystem::path& p) {
  std::string ext = p.extension().string();
  for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (ext == ".png") return "image/png";
  if (ext == ".jpg" || ext == ".jpeg") return "image/jpeg";
  if (ext == ".webp") return "image/webp";
  if (ext == ".gif") return "image/gif";
  return "application/octet-stream";
}

bool Retryable(int status) { return status == 408 || status == 429 || status >= 500; }

}  // namespace

Json BuildChatRequest(const Conversation& conversation, const BackendSettings& settings) {
  Json messages = Json::array();
  for (const Message& m : conversation) {
    Json content = Json::array();
    for (const Part& p : m.parts) {
      if (const auto* img = std::get_if<ImagePart>(&p.content)) {
        std::string bytes;
        try {
          bytes = ReadTextFile(img->path);
        } catch (const IoError& e) {
          throw BackendError(BackendError::Kind::kPrecondition,
                             "cannot read image " + img->uri + ": " + e.what());
        }
        content.push_back({{"type", "image"},
                           {"media_type", MediaType(img->path)},
                           {"data", Base64Encode(bytes)}});
      } else {
        content.push_back({{"type", "text"}, {"text", p.Render()}});
      }
    }
    messages.push_back({{"role", std::string(RoleName(m.role))}, {"content", std::move(content)}});
  }
  Json body = Json::object();
  body["model"] = settings.model;
  body["messages"] = std::move(messages);
  body["temperature"] = settings.temperature;
  body["max_tokens"] = settings.max_tokens;
  return body;
}

std::string ParseChatResponse(const std::string& body) {
  Json doc;
  try {
    doc = Json::parse(body);
  } catch (const Json::exception& e) {
    throw BackendError(BackendError::Kind::kProtocol, std::string("unparseable response: ") + e.what());
  }
  auto text_of = [](const Json& content) -> std::optional<std::string> {
    if (content.is_string()) return content.get<std::string>();
    if (content.is_array()) {
      std::string out;
      bool any = false;
      for (const auto& part : content) {
        if (part.is_object() && part.contains("text") && part["text"].is_string()) {
          out += part["text"].get<std::string>();
          any = true;
        }
      }
      if (any) return out;
    }
    return std::nullopt;
  };

  if (doc.contains("choices") && doc["choices"].is_array() && !doc["choices"].empty()) {
    const Json& choice = doc["choices"][0];
    if (choice.value("finish_reason", "") == "content_filter") {
      throw BackendError(BackendError::Kind::kRefusal, "response withheld by content filter");
    }
    if (choice.contains("message")) {
      const Json& msg = choice["message"];
      if (msg.contains("refusal") && msg["refusal"].is_string()) {
        throw BackendError(BackendError::Kind::kRefusal, "model refused: " + msg["refusal"].get<std::string>());
      }
      if (msg.contains("content")) {
        if (auto t = text_of(msg["content"])) return *t;
      }
    }
  }
  if (doc.value("stop_reason", "") == "refusal") {
    throw BackendError(BackendError::Kind::kRefusal, "model refused the request");
  }
  if (doc.contains("content")) {
    if (auto t = text_of(doc["content"])) return *t;
  }
  if (doc.contains("text") && doc["text"].is_string()) return doc["text"].get<std::string>();
  throw BackendError(BackendError::Kind::kProtocol, "response carries no text");
}

HttpBackend::HttpBackend(BackendSettings settings, HttpBackendConfig config, std::size_t max_in_flight)
    : Backend(std::move(settings), max_in_flight), config_(std::move(config)) {
  const auto scheme_end = config_.endpoint.find("://");
  if (scheme_end == std::string::npos) {
    throw std::invalid_argument("endpoint must be an absolute http(s) URL: " + config_.endpoint);
  }
  const auto path_begin = config_.endpoint.find('/', scheme_end + 3);
  scheme_host_port_ = config_.endpoint.substr(0, path_begin);
  path_ = path_begin == std::string::npos ? "/" : config_.endpoint.substr(path_begin);
}

std::string HttpBackend::DoComplete(const Conversation& conversation, const std::string& digest) {
  const std::string body = BuildChatRequest(conversation, settings()).dump();

  httplib::Headers headers;
  if (!config_.api_key_env.empty()) {
    const char* key = std::getenv(config_.api_key_env.c_str());
    if (key == nullptr || *key == '\0') {
      throw BackendError(BackendError::Kind::kPrecondition,
                         "API key variable " + config_.api_key_env + " is not set", digest);
    }
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  httplib::Client client(scheme_host_port_);
  client.set_connection_timeout(config_.timeout);
  client.set_read_timeout(config_.timeout);
  client.set_write_timeout(config_.timeout);

  auto backoff = config_.initial_backoff;
  std::string last_error;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    ++attempts_;
    auto res = client.Post(path_, headers, body, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 200 && res->status < 300) return ParseChatResponse(res->body);
    if (Retryable(res->status)) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    throw BackendError(BackendError::Kind::kRefusal,
                       "HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200), digest);
  }
  throw BackendError(BackendError::Kind::kTransport,
                     last_error + " after " + std::to_string(config_.max_retries) + " retries", digest);
}

}  // namespace modalchain
