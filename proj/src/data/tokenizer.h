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

#ifndef ADENET_DATA_TOKENIZER_H_
#define ADENET_DATA_TOKENIZER_H_

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace adenet {

struct Token {
  std::string text;
  std::size_t begin = 0;  // byte offsets into the source text, [begin, end)
  std::size_t end = 0;
};

// Splits on whitespace; every ASCII punctuation character other than '-'
// becomes its own token, so hyphenated names such as "5-FU" stay whole.
// Offsets in `breaks` force a token boundary, which lets annotation spans
// that end inside a hyphenated word ("azithromycin-induced") align.
std::vector<Token> tokenize(std::string_view text,
                            const std::set<std::size_t>& breaks = {});

std::string to_lower_ascii(std::string_view s);

}  // namespace adenet

#endif  // ADENET_DATA_TOKENIZER_H_
