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

#ifndef MODALCHAIN_DEMO_HPP_
#define MODALCHAIN_DEMO_HPP_

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "modalchain/common.hpp"
#include "modalchain/json_util.hpp"

namespace modalchain {

inline constexpr std::size_t kEmgChannels = 8;

struct Pixel {
  double x = 0;
  double y = 0;
  bool operator==(const Pixel&) const = default;
};

struct FingerTips {
  Pixel thumb;
  Pixel middle;
  bool operator==(const FingerTips&) const = default;
};

// Fingertip pixels for one camera frame. A hand that was not tracked in the
// frame is absent rather than zero-filled.
struct HandPose {
  std::optional<FingerTips> left;
  std::optional<FingerTips> right;

  const std::optional<FingerTips>& Get(Hand h) const { return h == Hand::kLeft ? left : right; }
  bool Empty() const { return !left && !right; }
  bool operator==(const HandPose&) const = default;
};

struct RawEmgTrace {
  std::array<std::vector<double>, kEmgChannels> channels;
  double sample_rate_hz = 200.0;

  std::size_t SampleCount() const { return channels[0].size(); }
  // Throws std::invalid_argument naming the violated invariant.
  void Validate() const;
  bool operator==(const RawEmgTrace&) const = default;
};

struct RawAudioTrace {
  std::vector<double> samples;
  double sample_rate_hz = 0.0;

  void Validate() const;
  bool operator==(const RawAudioTrace&) const = default;
};

enum class ForceSource { kEmg, kAudio, kPrecomputed };

std::string_view ForceSourceName(ForceSource s);

struct Frame {
  std::size_t index = 0;
  double timestamp_s = 0;
  std::string image;  // relative to the demo's image_dir
  double force = 0;   // normalized to [0, 1]
  HandPose hands;
  bool operator==(const Frame&) const = default;
};

struct MultimodalDemo {
  std::string id;
  double frame_rate_hz = 60.0;
  std::string image_dir;
  std::optional<int> image_width;
  std::optional<int> image_height;
  ForceSource force_source = ForceSource::kPrecomputed;
  std::vector<Frame> frames;
  std::optional<RawEmgTrace> emg;
  std::optional<RawAudioTrace> audio;
  // Directory the manifest was loaded from; not part of the recording.
  std::filesystem::path base_dir;

  // "image_dir/image" as written in the manifest.
  std::string ImageRef(const Frame& f) const;
  std::filesystem::path ImagePath(const Frame& f) const;
  std::vector<double> ForceSeries() const;

  bool operator==(const MultimodalDemo& o) const;
};

struct ForceSeriesResult {
  std::vector<double> values;
  // Raw samples that fell after the last frame window.
  std::size_t dropped_samples = 0;
};

// Per-frame channel maximum. Frame i covers raw-sample times in
// [i / frame_rate_hz, (i + 1) / frame_rate_hz); an empty window yields 0.
ForceSeriesResult EmgToForce(const RawEmgTrace& emg, double frame_rate_hz, std::size_t n_frames);

// Per-frame RMS loudness over the same half-open windows as EmgToForce.
ForceSeriesResult AudioToForce(const RawAudioTrace& audio, double frame_rate_hz,
                               std::size_t n_frames);

// Min-max scaling to [0, 1]. A constant series maps to all zeros.
std::vector<double> NormalizeSeries(std::span<const double> values);

struct KeyframeSet {
  std::vector<std::size_t> indices;
  std::vector<Frame> frames;  // copies of demo.frames[indices[i]]
};

// k uniformly spaced indices over [0, n_frames - 1], endpoints included.
std::vector<std::size_t> KeyframeIndices(std::size_t n_frames, std::size_t k);
KeyframeSet SelectKeyframes(const MultimodalDemo& demo, std::size_t k);

struct LoadReport {
  std::size_t dropped_samples = 0;
};

// Throws IoError for unreadable files and SchemaError (with field path) for
// malformed manifests.
MultimodalDemo LoadRecording(const std::filesystem::path& manifest_path,
                             LoadReport* report = nullptr);
MultimodalDemo ParseRecording(const Json& doc, const std::filesystem::path& base_dir,
                              LoadReport* report = nullptr);
Json RecordingToJson(const MultimodalDemo& demo);
void SaveRecording(const MultimodalDemo& demo, const std::filesystem::path& manifest_path);

}  // namespace modalchain

#endif  // MODALCHAIN_DEMO_HPP_
