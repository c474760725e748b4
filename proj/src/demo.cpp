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

#include "modalchain/demo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace modalchain {

namespace ju = json_util;

namespace {

void RequireRate(double hz, const char* what) {
  if (!(hz > 0) || !std::isfinite(hz)) {
    throw std::invalid_argument(std::string(what) + ": sample_rate_hz must be positive");
  }
}

// Frame owning the raw sample at index j: i with i*sr <= j*fr < (i+1)*sr.
std::size_t WindowOf(std::size_t j, double sample_rate_hz, double frame_rate_hz) {
  const double jf = static_cast<double>(j) * frame_rate_hz;
  auto i = static_cast<std::size_t>(std::floor(jf / sample_rate_hz));
  while (i > 0 && static_cast<double>(i) * sample_rate_hz > jf) --i;
  while (static_cast<double>(i + 1) * sample_rate_hz <= jf) ++i;
  return i;
}

void CheckFrameRequest(std::size_t n_samples, double sample_rate_hz, double frame_rate_hz,
                       std::size_t n_frames) {
  if (n_samples == 0) throw std::invalid_argument("empty trace");
  if (n_frames == 0) throw std::invalid_argument("zero frames requested");
  if (!(frame_rate_hz > 0) || !std::isfinite(frame_rate_hz)) {
    throw std::invalid_argument("frame_rate_hz must be positive");
  }
  // n_frames / fr <= n_samples / sr + 1 / fr
  const double lhs = static_cast<double>(n_frames) * sample_rate_hz;
  const double rhs = static_cast<double>(n_samples) * frame_rate_hz + sample_rate_hz;
  if (lhs > rhs) {
    throw std::invalid_argument("requested frames extend past the end of the trace");
  }
}

Pixel ParsePixel(const Json& v, const std::string& path) {
  const auto xy = ju::AsNumberArray(v, path);
  if (xy.size() != 2) throw SchemaError(path, "expected [x, y]");
  if (xy[0] < 0 || xy[1] < 0) throw SchemaError(path, "pixel coordinates must be non-negative");
  return {xy[0], xy[1]};
}

Json PixelToJson(const Pixel& p) { return Json::array({p.x, p.y}); }

}  // namespace

void RawEmgTrace::Validate() const {
  RequireRate(sample_rate_hz, "emg");
  const std::size_t n = channels[0].size();
  for (std::size_t c = 0; c < kEmgChannels; ++c) {
    if (channels[c].size() != n) {
      throw std::invalid_argument("emg channel " + std::to_string(c) + " length " +
                                  std::to_string(channels[c].size()) + " != " +
                                  std::to_string(n));
    }
    for (double v : channels[c]) {
      if (!std::isfinite(v)) throw std::invalid_argument("emg reading is not finite");
    }
  }
}

void RawAudioTrace::Validate() const {
  RequireRate(sample_rate_hz, "audio");
  for (double v : samples) {
    if (!std::isfinite(v) || v < -1.0 || v > 1.0) {
      throw std::invalid_argument("audio sample outside [-1, 1]");
    }
  }
}

std::string_view ForceSourceName(ForceSource s) {
  switch (s) {
    case ForceSource::kEmg: return "emg";
    case ForceSource::kAudio: return "audio";
    case ForceSource::kPrecomputed: return "precomputed";
  }
  return "?";
}

std::string MultimodalDemo::ImageRef(const Frame& f) const {
  if (image_dir.empty()) return f.image;
  return (std::filesystem::path(image_dir) / f.image).generic_string();
}

std::filesystem::path MultimodalDemo::ImagePath(const Frame& f) const {
  return base_dir / ImageRef(f);
}

std::vector<double> MultimodalDemo::ForceSeries() const {
  std::vector<double> out;
  out.reserve(frames.size());
  for (const Frame& f : frames) out.push_back(f.force);
  return out;
}

bool MultimodalDemo::operator==(const MultimodalDemo& o) const {
  return id == o.id && frame_rate_hz == o.frame_rate_hz && image_dir == o.image_dir &&
         image_width == o.image_width && image_height == o.image_height &&
         force_source == o.force_source && frames == o.frames && emg == o.emg &&
         audio == o.audio;
}

ForceSeriesResult EmgToForce(const RawEmgTrace& emg, double frame_rate_hz,
                             std::size_t n_frames) {
  emg.Validate();
  const std::size_t n = emg.SampleCount();
  CheckFrameRequest(n, emg.sample_rate_hz, frame_rate_hz, n_frames);

  ForceSeriesResult out;
  out.values.assign(n_frames, 0.0);
  std::vector<bool> seen(n_frames, false);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t i = WindowOf(j, emg.sample_rate_hz, frame_rate_hz);
    if (i >= n_frames) {
      ++out.dropped_samples;
      continue;
    }
    for (const auto& ch : emg.channels) {
      if (!seen[i] || ch[j] > out.values[i]) {
        out.values[i] = ch[j];
        seen[i] = true;
      }
    }
  }
  return out;
}

ForceSeriesResult AudioToForce(const RawAudioTrace& audio, double frame_rate_hz,
                               std::size_t n_frames) {
  audio.Validate();
  const std::size_t n = audio.samples.size();
  CheckFrameRequest(n, audio.sample_rate_hz, frame_rate_hz, n_frames);

  std::vector<double> sum_sq(n_frames, 0.0);
  std::vector<std::size_t> count(n_frames, 0);
  ForceSeriesResult out;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t i = WindowOf(j, audio.sample_rate_hz, frame_rate_hz);
    if (i >= n_frames) {
      ++out.dropped_samples;
      continue;
    }
    sum_sq[i] += audio.samples[j] * audio.samples[j];
    ++count[i];
  }
  out.values.resize(n_frames);
  for (std::size_t i = 0; i < n_frames; ++i) {
    out.values[i] = count[i] == 0 ? 0.0 : std::sqrt(sum_sq[i] / static_cast<double>(count[i]));
  }
  return out;
}

std::vector<double> NormalizeSeries(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("NormalizeSeries: empty input");
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("NormalizeSeries: non-finite value");
  }
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  std::vector<double> out(values.size(), 0.0);
  if (hi == lo) return out;
  const double range = hi - lo;
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - lo) / range;
  return out;
}

std::vector<std::size_t> KeyframeIndices(std::size_t n_frames, std::size_t k) {
  if (k < 2 || k > n_frames) {
    throw std::invalid_argument("keyframe count " + std::to_string(k) + " outside [2, " +
                                std::to_string(n_frames) + "]");
  }
  std::vector<std::size_t> out(k);
  const std::size_t span = n_frames - 1;
  const std::size_t steps = k - 1;
  for (std::size_t i = 0; i < k; ++i) {
    // round(i * span / steps), half up, in integer arithmetic
    out[i] = (2 * i * span + steps) / (2 * steps);
  }
  return out;
}

KeyframeSet SelectKeyframes(const MultimodalDemo& demo, std::size_t k) {
  KeyframeSet out;
  out.indices = KeyframeIndices(demo.frames.size(), k);
  out.frames.reserve(k);
  for (std::size_t i : out.indices) out.frames.push_back(demo.frames[i]);
  return out;
}

MultimodalDemo ParseRecording(const Json& doc, const std::filesystem::path& base_dir,
                              LoadReport* report) {
  if (!doc.is_object()) throw SchemaError("$", "manifest must be a JSON object");
  MultimodalDemo demo;
  demo.base_dir = base_dir;
  if (const Json* id = ju::Find(doc, "id")) demo.id = ju::AsString(*id, "id");

  demo.frame_rate_hz = ju::AsNumber(ju::Require(doc, "frame_rate_hz", ""), "frame_rate_hz");
  if (demo.frame_rate_hz <= 0) throw SchemaError("frame_rate_hz", "must be positive");
  demo.image_dir = ju::AsString(ju::Require(doc, "image_dir", ""), "image_dir");
  if (const Json* w = ju::Find(doc, "image_width")) {
    demo.image_width = static_cast<int>(ju::AsInteger(*w, "image_width"));
  }
  if (const Json* h = ju::Find(doc, "image_height")) {
    demo.image_height = static_cast<int>(ju::AsInteger(*h, "image_height"));
  }

  const std::string source = ju::AsString(ju::Require(doc, "force_source", ""), "force_source");
  if (source == "emg") {
    demo.force_source = ForceSource::kEmg;
  } else if (source == "audio") {
    demo.force_source = ForceSource::kAudio;
  } else if (source == "precomputed") {
    demo.force_source = ForceSource::kPrecomputed;
  } else {
    throw SchemaError("force_source", "expected \"emg\", \"audio\" or \"precomputed\"");
  }

  if (const Json* emg = ju::Find(doc, "emg")) {
    RawEmgTrace trace;
    trace.sample_rate_hz =
        ju::AsNumber(ju::Require(*emg, "sample_rate_hz", "emg"), "emg.sample_rate_hz");
    if (trace.sample_rate_hz <= 0) throw SchemaError("emg.sample_rate_hz", "must be positive");
    const Json& channels = ju::Require(*emg, "channels", "emg");
    if (!channels.is_array() || channels.size() != kEmgChannels) {
      throw SchemaError("emg.channels", "expected 8 channel arrays");
    }
    for (std::size_t c = 0; c < kEmgChannels; ++c) {
      const std::string path = ju::Index("emg.channels", c);
      trace.channels[c] = ju::AsNumberArray(channels[c], path);
      if (trace.channels[c].size() != trace.channels[0].size()) {
        throw SchemaError(path, "channel length " + std::to_string(trace.channels[c].size()) +
                                    " differs from channel 0 length " +
                                    std::to_string(trace.channels[0].size()));
      }
    }
    demo.emg = std::move(trace);
  }

  if (const Json* audio = ju::Find(doc, "audio")) {
    RawAudioTrace trace;
    trace.sample_rate_hz =
        ju::AsNumber(ju::Require(*audio, "sample_rate_hz", "audio"), "audio.sample_rate_hz");
    if (trace.sample_rate_hz <= 0) throw SchemaError("audio.sample_rate_hz", "must be positive");
    trace.samples = ju::AsNumberArray(ju::Require(*audio, "samples", "audio"), "audio.samples");
    for (std::size_t i = 0; i < trace.samples.size(); ++i) {
      if (trace.samples[i] < -1.0 || trace.samples[i] > 1.0) {
        throw SchemaError(ju::Index("audio.samples", i), "amplitude outside [-1, 1]");
      }
    }
    demo.audio = std::move(trace);
  }

  const Json& frames = ju::Require(doc, "frames", "");
  if (!frames.is_array() || frames.empty()) throw SchemaError("frames", "expected nonempty array");
  std::vector<std::optional<double>> given_force;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const std::string path = ju::Index("frames", i);
    const Json& fj = frames[i];
    Frame f;
    const long long idx = ju::AsInteger(ju::Require(fj, "index", path), ju::Join(path, "index"));
    if (idx != static_cast<long long>(i)) {
      throw SchemaError(ju::Join(path, "index"), "frame indices must be contiguous from 0");
    }
    f.index = i;
    f.timestamp_s =
        ju::AsNumber(ju::Require(fj, "timestamp_s", path), ju::Join(path, "timestamp_s"));
    if (i > 0 && !(f.timestamp_s > demo.frames.back().timestamp_s)) {
      throw SchemaError(ju::Join(path, "timestamp_s"), "timestamps must be strictly increasing");
    }
    f.image = ju::AsString(ju::Require(fj, "image", path), ju::Join(path, "image"));
    if (const Json* force = ju::Find(fj, "force")) {
      given_force.push_back(ju::AsNumber(*force, ju::Join(path, "force")));
    } else {
      given_force.push_back(std::nullopt);
    }
    if (const Json* hands = ju::Find(fj, "hands")) {
      const std::string hpath = ju::Join(path, "hands");
      if (!hands->is_object()) throw SchemaError(hpath, "expected object");
      for (Hand h : kAllHands) {
        const Json* hj = ju::Find(*hands, HandName(h));
        if (hj == nullptr) continue;
        const std::string tpath = ju::Join(hpath, HandName(h));
        FingerTips tips{ParsePixel(ju::Require(*hj, "thumb", tpath), ju::Join(tpath, "thumb")),
                        ParsePixel(ju::Require(*hj, "middle", tpath), ju::Join(tpath, "middle"))};
        for (const auto& [p, name] : {std::pair{tips.thumb, "thumb"}, {tips.middle, "middle"}}) {
          if ((demo.image_width && p.x >= *demo.image_width) ||
              (demo.image_height && p.y >= *demo.image_height)) {
            throw SchemaError(ju::Join(tpath, name), "pixel outside declared image dimensions");
          }
        }
        (h == Hand::kLeft ? f.hands.left : f.hands.right) = tips;
      }
    }
    demo.frames.push_back(std::move(f));
  }

  const std::size_t n_frames = demo.frames.size();
  std::vector<double> raw;
  try {
    switch (demo.force_source) {
      case ForceSource::kEmg: {
        if (!demo.emg) throw SchemaError("emg", "force_source is \"emg\" but no emg block");
        auto r = EmgToForce(*demo.emg, demo.frame_rate_hz, n_frames);
        raw = std::move(r.values);
        if (report) report->dropped_samples = r.dropped_samples;
        break;
      }
      case ForceSource::kAudio: {
        if (!demo.audio) throw SchemaError("audio", "force_source is \"audio\" but no audio block");
        auto r = AudioToForce(*demo.audio, demo.frame_rate_hz, n_frames);
        raw = std::move(r.values);
        if (report) report->dropped_samples = r.dropped_samples;
        break;
      }
      case ForceSource::kPrecomputed:
        for (std::size_t i = 0; i < n_frames; ++i) {
          if (!given_force[i]) {
            throw SchemaError(ju::Join(ju::Index("frames", i), "force"),
                              "required when force_source is \"precomputed\"");
          }
          raw.push_back(*given_force[i]);
        }
        break;
    }
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string(ForceSourceName(demo.force_source)), e.what());
  }

  const std::vector<double> normalized = NormalizeSeries(raw);
  for (std::size_t i = 0; i < n_frames; ++i) demo.frames[i].force = normalized[i];
  return demo;
}

MultimodalDemo LoadRecording(const std::filesystem::path& manifest_path, LoadReport* report) {
  const Json doc = ReadJsonFile(manifest_path);
  MultimodalDemo demo = ParseRecording(doc, manifest_path.parent_path(), report);
  if (demo.id.empty()) demo.id = manifest_path.parent_path().filename().string();
  return demo;
}

Json RecordingToJson(const MultimodalDemo& demo) {
  Json doc = Json::object();
  doc["id"] = demo.id;
  doc["frame_rate_hz"] = demo.frame_rate_hz;
  doc["image_dir"] = demo.image_dir;
  if (demo.image_width) doc["image_width"] = *demo.image_width;
  if (demo.image_height) doc["image_height"] = *demo.image_height;
  doc["force_source"] = std::string(ForceSourceName(demo.force_source));
  Json frames = Json::array();
  for (const Frame& f : demo.frames) {
    Json fj = Json::object();
    fj["index"] = f.index;
    fj["timestamp_s"] = f.timestamp_s;
    fj["image"] = f.image;
    fj["force"] = f.force;
    if (!f.hands.Empty()) {
      Json hands = Json::object();
      for (Hand h : kAllHands) {
        if (const auto& tips = f.hands.Get(h)) {
          hands[std::string(HandName(h))] = {{"thumb", PixelToJson(tips->thumb)},
                                             {"middle", PixelToJson(tips->middle)}};
        }
      }
      fj["hands"] = std::move(hands);
    }
    frames.push_back(std::move(fj));
  }
  doc["frames"] = std::move(frames);
  if (demo.emg) {
    Json channels = Json::array();
    for (const auto& ch : demo.emg->channels) channels.push_back(ch);
    doc["emg"] = {{"sample_rate_hz", demo.emg->sample_rate_hz}, {"channels", std::move(channels)}};
  }
  if (demo.audio) {
    doc["audio"] = {{"sample_rate_hz", demo.audio->sample_rate_hz},
                    {"samples", demo.audio->samples}};
  }
  return doc;
}

void SaveRecording(const MultimodalDemo& demo, const std::filesystem::path& manifest_path) {
  WriteTextFile(manifest_path, RecordingToJson(demo).dump(2) + "\n");
}

}  // namespace modalchain
