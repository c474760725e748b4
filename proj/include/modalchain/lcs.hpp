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

#ifndef MODALCHAIN_LCS_HPP_
#define MODALCHAIN_LCS_HPP_

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

namespace modalchain {

struct CommonRun {
  std::size_t length = 0;
  std::size_t a_begin = 0;  // start of the run in `a`
  std::size_t b_begin = 0;  // start of the run in `b`
};

// Longest common contiguous run of two sequences, O(|a|·|b|) time and
// O(|b|) space. Ties resolve to the earliest end position in `a`, then `b`.
template <typename T>
CommonRun LongestCommonRun(std::span<const T> a, std::span<const T> b) {
  CommonRun best;
  if (a.empty() || b.empty()) return best;
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      if (a[i - 1] == b[j - 1]) {
        cur[j] = prev[j - 1] + 1;
        if (cur[j] > best.length) {
          best.length = cur[j];
          best.a_begin = i - cur[j];
          best.b_begin = j - cur[j];
        }
      } else {
        cur[j] = 0;
      }
    }
    std::swap(prev, cur);
  }
  return best;
}

template <typename T>
std::size_t LongestCommonSubstring(std::span<const T> a, std::span<const T> b) {
  return LongestCommonRun(a, b).length;
}

template <typename T>
std::size_t LongestCommonSubstring(const std::vector<T>& a, const std::vector<T>& b) {
  return LongestCommonRun(std::span<const T>(a), std::span<const T>(b)).length;
}

}  // namespace modalchain

#endif  // MODALCHAIN_LCS_HPP_
