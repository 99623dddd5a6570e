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

#include "embedding/vocab.h"

#include <set>

#include "data/tokenizer.h"
#include "util/error.h"
#include "util/hash.h"

namespace adenet {

IdMap::IdMap(std::vector<std::string> reserved) {
  for (auto& r : reserved) add(r);
}

std::size_t IdMap::add(const std::string& key) {
  auto it = ids_.find(key);
  if (it != ids_.end()) return it->second;
  keys_.push_back(key);
  ids_.emplace(key, keys_.size() - 1);
  return keys_.size() - 1;
}

std::size_t IdMap::get(std::string_view key, std::size_t fallback) const {
  auto it = ids_.find(std::string(key));
  return it == ids_.end() ? fallback : it->second;
}

bool IdMap::contains(std::string_view key) const { return ids_.count(std::string(key)) > 0; }

std::vector<std::string> utf8_chars(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    std::size_t len = 1;
    if (c >= 0xF0) {
      len = 4;
    } else if (c >= 0xE0) {
      len = 3;
    } else if (c >= 0xC0) {
      len = 2;
    }
    if (i + len > text.size()) len = 1;
    for (std::size_t k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(text[i + k]) & 0xC0) != 0x80) {
        len = 1;
        break;
      }
    }
    out.emplace_back(text.substr(i, len));
    i += len;
  }
  return out;
}

Vocab::Vocab()
    : words_({"<pad>", "<unk>"}), chars_({"<pad>", "<unk>"}), pos_({"<unk>"}) {}

Vocab Vocab::build(const std::vector<Sample>& train) {
  // Sorted insertion: ids do not depend on sample order.
  std::set<std::string> words, chars, tags;
  for (const auto& s : train) {
    for (const auto& tok : s.tokens) {
      words.insert(to_lower_ascii(tok));
      for (auto& ch : utf8_chars(tok)) chars.insert(std::move(ch));
    }
    for (const auto& p : s.pos) tags.insert(p);
  }
  Vocab v;
  for (const auto& w : words) v.words_.add(w);
  for (const auto& c : chars) v.chars_.add(c);
  for (const auto& t : tags) v.pos_.add(t);
  return v;
}

std::size_t Vocab::word_id(std::string_view word) const {
  return words_.get(to_lower_ascii(word), kUnk);
}

std::size_t Vocab::char_id(std::string_view ch) const { return chars_.get(ch, kUnk); }

std::size_t Vocab::pos_id(std::string_view tag) const { return pos_.get(tag, kPosUnk); }

std::vector<std::size_t> Vocab::char_ids(std::string_view word) const {
  std::vector<std::size_t> ids;
  for (const auto& ch : utf8_chars(word)) ids.push_back(char_id(ch));
  return ids;
}

std::size_t Vocab::add_word(std::string_view word) {
  return words_.add(to_lower_ascii(word));
}

std::uint64_t Vocab::hash() const {
  Fnv1a h;
  for (const IdMap* m : {&words_, &chars_, &pos_}) {
    h.update("\x1e");
    for (const auto& k : m->keys()) {
      h.update(k);
      h.update(std::string_view("\0", 1));
    }
  }
  h.update("\x1e");
  for (auto label : kEntityLabels) {
    h.update(label);
    h.update(std::string_view("\0", 1));
  }
  h.update(kStartLabelName);
  return h.digest();
}

std::string Vocab::hash_hex() const { return hex64(hash()); }

nlohmann::json Vocab::to_json() const {
  nlohmann::json j;
  j["words"] = words_.keys();
  j["chars"] = chars_.keys();
  j["pos"] = pos_.keys();
  std::vector<std::string> labels(kEntityLabels.begin(), kEntityLabels.end());
  labels.emplace_back(kStartLabelName);
  j["labels"] = labels;
  return j;
}

Vocab Vocab::from_json(const nlohmann::json& j) {
  Vocab v;
  v.words_ = IdMap();
  v.chars_ = IdMap();
  v.pos_ = IdMap();
  try {
    for (const auto& w : j.at("words")) v.words_.add(w.get<std::string>());
    for (const auto& c : j.at("chars")) v.chars_.add(c.get<std::string>());
    for (const auto& p : j.at("pos")) v.pos_.add(p.get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed vocabulary: ") + e.what());
  }
  if (v.words_.size() < 2 || v.words_.key(kPad) != "<pad>" || v.words_.key(kUnk) != "<unk>" ||
      v.chars_.size() < 2 || v.chars_.key(kPad) != "<pad>" || v.chars_.key(kUnk) != "<unk>" ||
      v.pos_.size() < 1 || v.pos_.key(kPosUnk) != "<unk>") {
    throw DataError("vocabulary is missing its reserved entries");
  }
  return v;
}

}  // namespace adenet
