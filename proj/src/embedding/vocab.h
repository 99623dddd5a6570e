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

#ifndef ADENET_EMBEDDING_VOCAB_H_
#define ADENET_EMBEDDING_VOCAB_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "data/sample.h"

namespace adenet {

// Dense string <-> id table. Reserved entries occupy the lowest ids.
class IdMap {
 public:
  IdMap() = default;
  explicit IdMap(std::vector<std::string> reserved);

  std::size_t add(const std::string& key);
  // Id of key, or `fallback` when absent.
  std::size_t get(std::string_view key, std::size_t fallback) const;
  bool contains(std::string_view key) const;
  const std::string& key(std::size_t id) const { return keys_.at(id); }
  std::size_t size() const { return keys_.size(); }
  const std::vector<std::string>& keys() const { return keys_; }

 private:
  std::vector<std::string> keys_;
  std::unordered_map<std::string, std::size_t> ids_;
};

// Splits UTF-8 text into code-point strings (invalid bytes pass through
// one at a time).
std::vector<std::string> utf8_chars(std::string_view text);

// Word, character and PoS tables built from the training partition. Words
// are looked up lowercased; characters keep their case. Unseen entries map to
// <unk>, never an error.
class Vocab {
 public:
  static constexpr std::size_t kPad = 0;
  static constexpr std::size_t kUnk = 1;
  static constexpr std::size_t kPosUnk = 0;

  Vocab();

  static Vocab build(const std::vector<Sample>& train);

  std::size_t word_id(std::string_view word) const;
  std::size_t char_id(std::string_view ch) const;
  std::size_t pos_id(std::string_view tag) const;
  std::vector<std::size_t> char_ids(std::string_view word) const;

  std::size_t word_count() const { return words_.size(); }
  std::size_t char_count() const { return chars_.size(); }
  std::size_t pos_count() const { return pos_.size(); }
  // Entity labels plus the <start> row.
  static std::size_t label_count() { return kNumEntityLabels + 1; }

  const IdMap& words() const { return words_; }
  const IdMap& chars() const { return chars_; }
  const IdMap& pos() const { return pos_; }

  // Fingerprint over every table in id order.
  std::uint64_t hash() const;
  std::string hash_hex() const;

  nlohmann::json to_json() const;
  static Vocab from_json(const nlohmann::json& j);

  // Adds a word (lowercased) if missing; used when a pretrained file should
  // extend coverage beyond the training words.
  std::size_t add_word(std::string_view word);

 private:
  IdMap words_;
  IdMap chars_;
  IdMap pos_;
};

}  // namespace adenet

#endif  // ADENET_EMBEDDING_VOCAB_H_
