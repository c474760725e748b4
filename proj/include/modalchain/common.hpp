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

#ifndef MODALCHAIN_COMMON_HPP_
#define MODALCHAIN_COMMON_HPP_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace modalchain {

enum class Hand { kLeft, kRight };

inline constexpr std::array<Hand, 2> kAllHands = {Hand::kLeft, Hand::kRight};

inline std::string_view HandName(Hand h) { return h == Hand::kLeft ? "left" : "right"; }

inline std::optional<Hand> ParseHand(std::string_view s) {
  if (s == "left") return Hand::kLeft;
  if (s == "right") return Hand::kRight;
  return std::nullopt;
}

// Input channels of a demonstration. Declaration order is the fixed
// chain order: force, then hand pose, then images.
enum class Modality { kForce, kHand, kImage };

inline constexpr std::array<Modality, 3> kChainOrder = {Modality::kForce, Modality::kHand,
                                                        Modality::kImage};

inline std::string_view ModalityName(Modality m) {
  switch (m) {
    case Modality::kForce: return "force";
    case Modality::kHand: return "hand";
    case Modality::kImage: return "image";
  }
  return "?";
}

inline std::optional<Modality> ParseModality(std::string_view s) {
  if (s == "force") return Modality::kForce;
  if (s == "hand") return Modality::kHand;
  if (s == "image" || s == "img") return Modality::kImage;
  return std::nullopt;
}

// Ordered, duplicate-free subset of modalities. Iteration always follows
// kChainOrder regardless of insertion order.
class ModalitySet {
 public:
  ModalitySet() = default;
  ModalitySet(std::initializer_list<Modality> ms) {
    for (Modality m : ms) Insert(m);
  }
  static ModalitySet All() { return {Modality::kForce, Modality::kHand, Modality::kImage}; }

  void Insert(Modality m) { bits_ |= Bit(m); }
  void Erase(Modality m) { bits_ &= ~Bit(m); }
  bool Contains(Modality m) const { return (bits_ & Bit(m)) != 0; }
  bool Empty() const { return bits_ == 0; }
  std::size_t Size() const {
    std::size_t n = 0;
    for (Modality m : kChainOrder) n += Contains(m) ? 1 : 0;
    return n;
  }
  std::vector<Modality> Ordered() const {
    std::vector<Modality> out;
    for (Modality m : kChainOrder)
      if (Contains(m)) out.push_back(m);
    return out;
  }
  // "force+hand+image" style label; stable across runs.
  std::string Label() const {
    std::string out;
    for (Modality m : Ordered()) {
      if (!out.empty()) out += '+';
      out += ModalityName(m);
    }
    return out;
  }
  bool operator==(const ModalitySet&) const = default;

 private:
  static unsigned Bit(Modality m) { return 1u << static_cast<unsigned>(m); }
  unsigned bits_ = 0;
};

}  // namespace modalchain

#endif  // MODALCHAIN_COMMON_HPP_
