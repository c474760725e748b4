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

#include "modalchain/backend.hpp"

#include <chrono>
#include <ctime>

#include "modalchain/digest.hpp"

namespace modalchain {

namespace ju = json_util;

namespace {

std::string UtcNow() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class LimiterGuard {
 public:
  explicit LimiterGuard(InFlightLimiter& l) : l_(l) { l_.Acquire(); }
  ~LimiterGuard() { l_.Release(); }
  LimiterGuard(const LimiterGuard&) = delete;
  LimiterGuard& operator=(const LimiterGuard&) = delete;

 private:
  InFlightLimiter& l_;
};

}  // namespace

std::string_view BackendErrorKindName(BackendError::Kind k) {
  switch (k) {
    case BackendError::Kind::kPrecondition: return "precondition";
    case BackendError::Kind::kTransport: return "transport";
    case BackendError::Kind::kRefusal: return "refusal";
    case BackendError::Kind::kReplayMiss: return "replay-miss";
    case BackendError::Kind::kEmptyResponse: return "empty-response";
    case BackendError::Kind::kProtocol: return "protocol";
  }
  return "?";
}

std::string RequestDigest(const Conversation& conversation, const BackendSettings& settings) {
  Json doc = Json::object();
  doc["model"] = settings.model;
  doc["temperature"] = settings.temperature;
  doc["max_tokens"] = settings.max_tokens;
  doc["messages"] = ConversationToJson(conversation);
  return Sha256Hex(doc.dump());
}

Json TranscriptEntryToJson(const TranscriptEntry& e) {
  Json j = Json::object();
  j["seq"] = e.seq;
  j["digest"] = e.digest;
  j["backend"] = e.backend;
  j["model"] = e.model;
  j["temperature"] = e.temperature;
  j["timestamp"] = e.timestamp;
  j["request"] = e.request;
  j["response"] = e.response;
  return j;
}

TranscriptEntry TranscriptEntryFromJson(const Json& doc) {
  TranscriptEntry e;
  e.seq = static_cast<std::size_t>(ju::AsInteger(ju::Require(doc, "seq", ""), "seq"));
  e.digest = ju::AsString(ju::Require(doc, "digest", ""), "digest");
  e.backend = ju::AsString(ju::Require(doc, "backend", ""), "backend");
  e.model = ju::AsString(ju::Require(doc, "model", ""), "model");
  e.temperature = ju::AsNumber(ju::Require(doc, "temperature", ""), "temperature");
  if (const Json* ts = ju::Find(doc, "timestamp")) e.timestamp = ju::AsString(*ts, "timestamp");
  e.request = ju::Require(doc, "request", "");
  e.response = ju::AsString(ju::Require(doc, "response", ""), "response");
  if (e.digest.size() != 64) throw SchemaError("digest", "expected 64 hex characters");
  return e;
}

Transcript::Transcript(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  file_.emplace(path, std::ios::binary | std::ios::trunc);
  if (!*file_) throw IoError("cannot open transcript " + path.string());
}

void Transcript::Append(TranscriptEntry entry) {
  std::lock_guard lock(mu_);
  entry.seq = entries_.size();
  if (file_) {
    *file_ << TranscriptEntryToJson(entry).dump() << '\n';
    file_->flush();
    if (!*file_) throw IoError("transcript write failed");
  }
  entries_.push_back(std::move(entry));
}

std::vector<TranscriptEntry> Transcript::Entries() const {
  std::lock_guard lock(mu_);
  return entries_;
}

std::size_t Transcript::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

std::vector<TranscriptEntry> Transcript::Load(const std::filesystem::path& path) {
  const std::string text = ReadTextFile(path);
  std::vector<TranscriptEntry> out;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    const std::string line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path.filename().string() + ":" + std::to_string(line_no);
    try {
      out.push_back(TranscriptEntryFromJson(Json::parse(line)));
    } catch (const Json::exception& e) {
      throw SchemaError(where, std::string("corrupt transcript line: ") + e.what());
    } catch (const SchemaError& e) {
      throw SchemaError(where, std::string("corrupt transcript line: ") + e.what());
    }
  }
  return out;
}

void Transcript::Save(const std::vector<TranscriptEntry>& entries, const std::filesystem::path& path) {
  std::string text;
  for (const auto& e : entries) text += TranscriptEntryToJson(e).dump() + "\n";
  WriteTextFile(path, text);
}

void InFlightLimiter::Acquire() {
  std::unique_lock lock(mu_);
  cv_.wait(lock, [&] { return active_ < limit_; });
  ++active_;
}

void InFlightLimiter::Release() {
  {
    std::lock_guard lock(mu_);
    --active_;
  }
  cv_.notify_one();
}

std::string Backend::Complete(const Conversation& conversation) {
  ValidateConversation(conversation);
  const std::string digest = RequestDigest(conversation, settings_);
  std::string response;
  {
    LimiterGuard guard(limiter_);
    response = DoComplete(conversation, digest);
  }
  {
    std::lock_guard lock(mu_);
    ++calls_;
  }
  if (transcript_) {
    TranscriptEntry e;
    e.digest = digest;
    e.backend = identity();
    e.model = settings_.model;
    e.temperature = settings_.temperature;
    e.timestamp = UtcNow();
    e.request = ConversationToJson(conversation);
    e.response = response;
    transcript_->Append(std::move(e));
  }
  return response;
}

std::size_t Backend::calls() const {
  std::lock_guard lock(mu_);
  return calls_;
}

ReplayBackend::ReplayBackend(BackendSettings settings, const std::vector<TranscriptEntry>& entries)
    : Backend(std::move(settings)) {
  for (const auto& e : entries) responses_.emplace(e.digest, e.response);
}

std::unique_ptr<ReplayBackend> ReplayBackend::FromFiles(
    BackendSettings settings, const std::vector<std::filesystem::path>& files) {
  std::vector<TranscriptEntry> all;
  for (const auto& f : files) {
    auto entries = Transcript::Load(f);
    all.insert(all.end(), entries.begin(), entries.end());
  }
  return std::make_unique<ReplayBackend>(std::move(settings), all);
}

std::string ReplayBackend::DoComplete(const Conversation&, const std::string& digest) {
  auto it = responses_.find(digest);
  if (it == responses_.end()) {
    throw BackendError(BackendError::Kind::kReplayMiss, "replay miss for request digest " + digest,
                       digest);
  }
  return it->second;
}

void MockBackend::AddFixture(std::string digest, std::string response) {
  fixtures_[std::move(digest)] = std::move(response);
}

void MockBackend::AddRule(Rule rule) { rules_.push_back(std::move(rule)); }

std::unique_ptr<MockBackend> MockBackend::FromJson(BackendSettings settings, const Json& doc,
                                                   const std::filesystem::path& base_dir) {
  auto mock = std::make_unique<MockBackend>(std::move(settings));
  if (const Json* fixtures = ju::Find(doc, "fixtures")) {
    for (const auto& [digest, text] : fixtures->items()) {
      mock->AddFixture(digest, ju::AsString(text, ju::Join("fixtures", digest)));
    }
  }
  if (const Json* rules = ju::Find(doc, "rules")) {
    for (std::size_t i = 0; i < rules->size(); ++i) {
      const std::string path = ju::Index("rules", i);
      const Json& rj = (*rules)[i];
      Rule rule;
      rule.all_of = ju::AsStringArray(ju::Require(rj, "match", path), ju::Join(path, "match"));
      if (const Json* file = ju::Find(rj, "response_file")) {
        rule.response = ReadTextFile(base_dir / ju::AsString(*file, ju::Join(path, "response_file")));
      } else {
        rule.response = ju::AsString(ju::Require(rj, "response", path), ju::Join(path, "response"));
      }
      mock->AddRule(std::move(rule));
    }
  }
  return mock;
}

std::string MockBackend::DoComplete(const Conversation& conversation, const std::string& digest) {
  if (auto it = fixtures_.find(digest); it != fixtures_.end()) return it->second;
  if (!rules_.empty()) {
    const std::string text = RenderConversation(conversation);
    for (const Rule& r : rules_) {
      bool ok = true;
      for (const auto& needle : r.all_of) {
        if (text.find(needle) == std::string::npos) {
          ok = false;
          break;
        }
      }
      if (ok) return r.response;
    }
  }
  throw BackendError(BackendError::Kind::kReplayMiss, "no mock fixture for request digest " + digest,
                     digest);
}

ScriptedBackend::ScriptedBackend(BackendSettings settings, std::vector<std::string> responses)
    : Backend(std::move(settings), 1), queue_(responses.begin(), responses.end()) {}

std::size_t ScriptedBackend::remaining() const {
  std::lock_guard lock(mu_);
  return queue_.size();
}

std::string ScriptedBackend::DoComplete(const Conversation&, const std::string& digest) {
  std::lock_guard lock(mu_);
  if (queue_.empty()) {
    throw BackendError(BackendError::Kind::kProtocol, "scripted backend exhausted", digest);
  }
  std::string r = std::move(queue_.front());
  queue_.pop_front();
  return r;
}

std::string RenderConversation(const Conversation& conversation) {
  std::string out;
  for (const Message& m : conversation) {
    out += "<";
    out += RoleName(m.role);
    out += ">\n";
    out += m.RenderText();
    out += "\n";
  }
  return out;
}

}  // namespace modalchain
