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

#ifndef MODALCHAIN_FORMAT_HPP_
#define MODALCHAIN_FORMAT_HPP_

#include <string>

namespace modalchain {

// Renders `value` with exactly `decimals` fractional digits, rounding half
// away from zero on the shortest round-trip decimal form of `value`, so
// 0.125 -> "0.13" and 0.145 -> "0.15" regardless of binary representation.
// Locale independent. Negative zero prints without a sign.
std::string FormatFixed(double value, int decimals);

}  // namespace modalchain

#endif  // MODALCHAIN_FORMAT_HPP_
