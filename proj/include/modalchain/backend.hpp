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

#ifndef MODALCHAIN_BACKEND_HPP_
#define MODALCHAIN_BACKEND_HPP_

#include <condition_variable>
#include <cstddef>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "modalchain/json_util.hpp"
#include "modalchain/message.hpp"

namespace modalchain {

class BackendError : public std::runtime_error {
 public:
  enum class Kind {
    kPrecondition,   // malformed request, never sent
    kTransport,      // network or server fault, retried before surfacing
    kRefusal,        // the backend declined the request; not retried
    kReplayMiss,     // no recorded response for the request digest
    kEmptyResponse,  // backend answered with no text
    kProtocol,       // unparseable response body or exhausted script
  };

  BackendError(Kind kind, const std::string& what, std::string digest = {})
      : std::runtime_error(what), kind_(kind), digest_(std::move(digest)) {}

  Kind kind() const { return kind_; }
  const std::string& digest() const { return digest_; }

 private:
  Kind kind_;
  std::string digest_;
};

std::string_view BackendErrorKindName(BackendError::Kind k);

// Decoding settings. All fields enter the request digest, so replay
// cannot silently answer a request made under different settings.
struct BackendSettings {
  std::string model = "replay";
  double temperature = 0.0;
  int max_tokens = 2048;
};

std::string RequestDigest(const Conversation& conversation, const BackendSettings& settings);

struct TranscriptEntry {
  std::size_t seq = 0;
  std::string digest;
  std::string backend;
  std::string model;
  double temperature = 0.0;
  std::string timestamp;  // UTC, ISO-8601
  Json request;           // ConversationToJson(...)
  std::string response;
};

Json TranscriptEntryToJson(const TranscriptEntry& e);
TranscriptEntry TranscriptEntryFromJson(const Json& doc);

// Append-only exchange log, optionally mirrored line by line to a JSONL
// file. Appends are serialized; log order is completion order.
class Transcript {
 public:
  Transcript() = default;
  // Truncates and streams to `path`.
  explicit Transcript(const std::filesystem::path& path);

  void Append(TranscriptEntry entry);
  std::vector<TranscriptEntry> Entries() const;
  std::size_t size() const;

  // Throws IoError when unreadable and SchemaError("<file>:<line>") on a
  // corrupt line.
  static std::vector<TranscriptEntry> Load(const std::filesystem::path& path);
  static void Save(const std::vector<TranscriptEntry>& entries, const std::filesystem::path& path);

 private:
  mutable std::mutex mu_;
  std::vector<TranscriptEntry> entries_;
  std::optional<std::ofstream> file_;
};

// Bounded counting gate for in-flight requests.
class InFlightLimiter {
 public:
  explicit InFlightLimiter(std::size_t limit) : limit_(limit == 0 ? 1 : limit) {}
  void Acquire();
  void Release();

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  std::size_t limit_;
  std::size_t active_ = 0;
};

// Uniform completion interface. Handles may be shared across threads;
// Complete() validates the request, gates concurrency, computes the digest
// and records the exchange to the attached transcript.
class Backend {
 public:
  explicit Backend(BackendSettings settings, std::size_t max_in_flight = 4)
      : settings_(std::move(settings)), limiter_(max_in_flight) {}
  virtual ~Backend() = default;
  Backend(const Backend&) = delete;
  Backend& operator=(const Backend&) = delete;

  std::string Complete(const Conversation& conversation);

  virtual std::string identity() const = 0;
  const BackendSettings& settings() const { return settings_; }
  void AttachTranscript(std::shared_ptr<Transcript> t) { transcript_ = std::move(t); }
  const std::shared_ptr<Transcript>& transcript() const { return transcript_; }
  std::size_t calls() const;

 protected:
  virtual std::string DoComplete(const Conversation& conversation, const std::string& digest) = 0;

 private:
  BackendSettings settings_;
  InFlightLimiter limiter_;
  std::shared_ptr<Transcript> transcript_;
  mutable std::mutex mu_;
  std::size_t calls_ = 0;
  std::size_t seq_ = 0;
};

// Answers only digests present in recorded transcripts.
class ReplayBackend : public Backend {
 public:
  ReplayBackend(BackendSettings settings, const std::vector<TranscriptEntry>& entries);
  static std::unique_ptr<ReplayBackend> FromFiles(BackendSettings settings,
                                                  const std::vector<std::filesystem::path>& files);
  std::string identity() const override { return "replay"; }
  std::size_t size() const { return responses_.size(); }
  bool Has(const std::string& digest) const { return responses_.count(digest) != 0; }

 protected:
  std::string DoComplete(const Conversation& conversation, const std::string& digest) override;

 private:
  std::map<std::string, std::string> responses_;
};

// Deterministic canned backend: exact digest fixtures first, then ordered
// substring rules over the rendered request text. First matching rule wins.
class MockBackend : public Backend {
 public:
  struct Rule {
    std::vector<std::string> all_of;  // every needle must occur
    std::string response;
  };

  explicit MockBackend(BackendSettings settings) : Backend(std::move(settings)) {}

  void AddFixture(std::string digest, std::string response);
  void AddRule(Rule rule);
  // {"fixtures": {digest: text}, "rules": [{"match": [..], "response": ..}
  // | {"match": [..], "response_file": ..}]}; files relative to `base_dir`.
  static std::unique_ptr<MockBackend> FromJson(BackendSettings settings, const Json& doc,
                                               const std::filesystem::path& base_dir);

  std::string identity() const override { return "mock"; }

 protected:
  std::string DoComplete(const Conversation& conversation, const std::string& digest) override;

 private:
  std::map<std::string, std::string> fixtures_;
  std::vector<Rule> rules_;
};

// Returns scripted responses in order, one per call, regardless of request.
class ScriptedBackend : public Backend {
 public:
  ScriptedBackend(BackendSettings settings, std::vector<std::string> responses);
  std::string identity() const override { return "scripted"; }
  std::size_t remaining() const;

 protected:
  std::string DoComplete(const Conversation& conversation, const std::string& digest) override;

 private:
  mutable std::mutex mu_;
  std::deque<std::string> queue_;
};

// Full text of a request as a text-only reader sees it.
std::string RenderConversation(const Conversation& conversation);

}  // namespace modalchain

#endif  // MODALCHAIN_BACKEND_HPP_
