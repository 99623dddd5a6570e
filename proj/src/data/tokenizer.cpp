// Copyright 2026 The adenet Authors.
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

#include "data/tokenizer.h"

#include <cctype>

namespace adenet {
namespace {

bool is_space(unsigned char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool is_split_punct(unsigned char c) { return c < 0x80 && std::ispunct(c) && c != '-'; }

}  // namespace

std::vector<Token> tokenize(std::string_view text, const std::set<std::size_t>& breaks) {
  std::vector<Token> tokens;
  std::size_t start = std::string_view::npos;
  auto flush = [&](std::size_t end) {
    if (start != std::string_view::npos && end > start) {
      tokens.push_back({std::string(text.substr(start, end - start)), start, end});
    }
    start = std::string_view::npos;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (breaks.count(i) > 0) flush(i);
    if (is_space(c)) {
      flush(i);
    } else if (is_split_punct(c)) {
      flush(i);
      tokens.push_back({std::string(1, text[i]), i, i + 1});
    } else if (start == std::string_view::npos) {
      start = i;
    }
  }
  flush(text.size());
  return tokens;
}

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    const auto u = static_cast<unsigned char>(c);
    if (u < 0x80) c = static_cast<char>(std::tolower(u));
  }
  return out;
}

}  // namespace adenet
