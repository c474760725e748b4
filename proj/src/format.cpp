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

#include "modalchain/format.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

namespace modalchain {

std::string FormatFixed(double value, int decimals) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("FormatFixed: non-finite value");
  }
  if (decimals < 0) decimals = 0;

  char buf[512];
  auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed);
  if (res.ec != std::errc()) {
    throw std::runtime_error("FormatFixed: conversion failed");
  }
  std::string text(buf, res.ptr);

  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.erase(0, 1);
  }
  std::string int_part = text;
  std::string frac_part;
  if (auto dot = text.find('.'); dot != std::string::npos) {
    int_part = text.substr(0, dot);
    frac_part = text.substr(dot + 1);
  }

  bool round_up = false;
  if (static_cast<int>(frac_part.size()) > decimals) {
    round_up = frac_part[static_cast<std::size_t>(decimals)] >= '5';
    frac_part.resize(static_cast<std::size_t>(decimals));
  } else {
    frac_part.append(static_cast<std::size_t>(decimals) - frac_part.size(), '0');
  }

  std::string digits = int_part + frac_part;
  if (round_up) {
    int i = static_cast<int>(digits.size()) - 1;
    for (; i >= 0; --i) {
      if (digits[static_cast<std::size_t>(i)] == '9') {
        digits[static_cast<std::size_t>(i)] = '0';
      } else {
        ++digits[static_cast<std::size_t>(i)];
        break;
      }
    }
    if (i < 0) digits.insert(digits.begin(), '1');
  }

  const std::size_t int_len = digits.size() - static_cast<std::size_t>(decimals);
  std::string out = digits.substr(0, int_len);
  if (decimals > 0) {
    out += '.';
    out += digits.substr(int_len);
  }
  if (negative && out.find_first_not_of("0.") != std::string::npos) {
    out.insert(out.begin(), '-');
  }
  return out;
}

}  // namespace modalchain
