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

#ifndef MODALCHAIN_HTTP_BACKEND_HPP_
#define MODALCHAIN_HTTP_BACKEND_HPP_

#include <atomic>
#include <chrono>
#include <string>

#include "modalchain/backend.hpp"

namespace modalchain {

struct HttpBackendConfig {
  std::string endpoint;     // e.g. "https://host/v1/chat/completions"
  std::string api_key_env;  // environment variable holding the key; may be empty
  int max_retries = 3;      // transport faults only
  std::chrono::milliseconds initial_backoff{500};
  std::chrono::seconds timeout{120};
};

// Request body for the chat-completion wire contract:
// {model, messages: [{role, content: [{type: "text", text} |
//  {type: "image", media_type, data}]}], temperature, max_tokens}.
// Image bytes are read from each part's path and base64-encoded.
Json BuildChatRequest(const Conversation& conversation, const BackendSettings& settings);

// Extracts the reply text from a chat-completion response body. Accepts
// `choices[0].message.content` (string or text-part array), top-level
// `content[...].text`, or `text`. Throws BackendError(kRefusal) when the
// body reports a refusal and kProtocol when no text can be found.
std::string ParseChatResponse(const std::string& body);

// Live HTTP client. Retries transport faults (connection errors, 408, 429,
// 5xx) with exponential backoff; other 4xx statuses and refusals surface
// immediately as kRefusal.
class HttpBackend : public Backend {
 public:
  HttpBackend(BackendSettings settings, HttpBackendConfig config, std::size_t max_in_flight = 4);
  std::string identity() const override { return "live:" + config_.endpoint; }
  std::size_t attempts() const { return attempts_.load(); }

 protected:
  std::string DoComplete(const Conversation& conversation, const std::string& digest) override;

 private:
  HttpBackendConfig config_;
  std::string scheme_host_port_;
  std::string path_;
  std::atomic<std::size_t> attempts_{0};
};

}  // namespace modalchain

#endif  // MODALCHAIN_HTTP_BACKEND_HPP_
