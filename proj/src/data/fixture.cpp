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

#include "data/fixture.h"

#include <map>
#include <set>
#include <utility>

#include "util/error.h"
#include "util/rng.h"

namespace adenet {

namespace {

const std::vector<std::string> kDrugs = {"lithium", "methotrexate"};
const std::vector<std::vector<std::string>> kEffects = {
    {"rash"}, {"nausea"}, {"renal", "failure"}, {"liver", "injury"}};
const std::vector<std::string> kPeople = {"woman", "man", "patient", "girl", "boy", "child"};
const std::vector<std::string> kAges = {"34", "45", "58", "62", "71", "19"};
const std::vector<std::string> kSeverity = {"severe", "acute", "mild", "transient", "fatal"};

const std::map<std::string, std::string>& pos_table() {
  static const std::map<std::string, std::string> table = {
      {"a", "DT"},          {"the", "DT"},          {"an", "DT"},
      {"we", "PRP"},        {"his", "PRP$"},        {"her", "PRP$"},
      {"developed", "VBD"}, {"presented", "VBD"},   {"caused", "VBD"},
      {"was", "VBD"},       {"followed", "VBD"},    {"report", "VBP"},
      {"induced", "VBN"},   {"associated", "VBN"},  {"receiving", "VBG"},
      {"starting", "VBG"},  {"after", "IN"},        {"by", "IN"},
      {"in", "IN"},         {"of", "IN"},           {"with", "IN"},
      {"during", "IN"},     {"and", "CC"},          {"but", "CC"},
      {"while", "IN"},      {"therapy", "NN"},      {"treatment", "NN"},
      {"case", "NN"},       {"administration", "NN"}, {"year-old", "JJ"},
      {"dose", "NN"},       {"high", "JJ"},         {"low", "JJ"},
      {".", "."},           {",", ","},             {"on", "IN"},
      {"day", "NN"},        {"three", "CD"},        {"two", "CD"},        {"later", "RB"},
      {"course", "NN"},       {"combined", "JJ"},           {"oral", "JJ"},
  };
  return table;
}

std::string pos_of(const std::string& w) {
  const auto& t = pos_table();
  if (auto it = t.find(w); it != t.end()) return it->second;
  for (const auto& d : kDrugs) {
    if (w == d) return "NN";
  }
  for (const auto& a : kAges) {
    if (w == a) return "CD";
  }
  for (const auto& s : kSeverity) {
    if (w == s) return "JJ";
  }
  return "NN";
}

// Effect owner meaning "every drug of the sentence".
constexpr std::size_t kBoth = static_cast<std::size_t>(-1);

// Accumulates one sentence; records entity spans as they are appended.
class SentenceBuilder {
 public:
  void words(std::initializer_list<std::string> ws) {
    for (const auto& w : ws) push(w, "O");
  }
  void word(const std::string& w) { push(w, "O"); }
  void drug(std::size_t d) {
    drugs_.push_back({d, tokens_.size()});
    push(kDrugs[d], "B-Drug");
  }
  // Appends an effect attributed to drug `owner` (or kBoth).
  void effect(std::size_t e, std::size_t owner) {
    const std::size_t begin = tokens_.size();
    for (std::size_t k = 0; k < kEffects[e].size(); ++k) {
      push(kEffects[e][k], k == 0 ? "B-Disease" : "I-Disease");
    }
    effects_.push_back({owner, {begin, tokens_.size()}});
  }

  std::vector<Sample> samples(const std::string& sentence_id) const {
    std::vector<Sample> out;
    std::set<std::size_t> seen;
    for (const auto& [d, at] : drugs_) {
      if (!seen.insert(d).second) continue;
      Sample s;
      s.id = sentence_id + "#" + std::to_string(out.size());
      s.sentence_id = sentence_id;
      s.tokens = tokens_;
      s.pos = pos_;
      s.entity_labels = labels_;
      s.drug_begin = at;
      s.drug_end = at + 1;
      s.drug_text = kDrugs[d];
      s.ade_labels.assign(tokens_.size(), 0);
      for (const auto& [owner, span] : effects_) {
        if (owner != d && owner != kBoth) continue;
        for (std::size_t t = span.first; t < span.second; ++t) s.ade_labels[t] = 1;
      }
      validate_sample(s);
      out.push_back(std::move(s));
    }
    return out;
  }

 private:
  void push(const std::string& w, const char* label) {
    tokens_.push_back(w);
    pos_.push_back(pos_of(w));
    labels_.emplace_back(label);
  }

  std::vector<std::string> tokens_, pos_, labels_;
  std::vector<std::pair<std::size_t, std::size_t>> drugs_;
  std::vector<std::pair<std::size_t, std::pair<std::size_t, std::size_t>>> effects_;
};

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[rng.below(v.size())];
}

constexpr std::size_t kSingleTemplates = 5;
constexpr std::size_t kPairTemplates = 2;

SentenceBuilder build(Rng& rng, bool pair) {
  SentenceBuilder b;
  const std::size_t d = rng.below(kDrugs.size());
  const std::size_t other = 1 - d;
  const std::size_t e1 = rng.below(kEffects.size());
  std::size_t e2 = rng.below(kEffects.size() - 1);
  if (e2 >= e1) ++e2;
  if (!pair) {
    switch (rng.below(kSingleTemplates)) {
      case 0:
        b.words({"a", pick(rng, kAges), "year-old", pick(rng, kPeople), "developed",
                 pick(rng, kSeverity)});
        b.effect(e1, d);
        b.words({"after", "starting"});
        b.drug(d);
        b.words({"therapy", "."});
        break;
      case 1:
        b.word(pick(rng, kSeverity));
        b.effect(e1, d);
        b.words({"was", "induced", "by"});
        b.drug(d);
        b.words({"in", "a", pick(rng, kAges), "year-old", pick(rng, kPeople), "."});
        break;
      case 2:
        b.words({"we", "report", "a", "case", "of"});
        b.effect(e1, d);
        b.words({"associated", "with", rng.bernoulli(0.5) ? "high" : "low", "dose"});
        b.drug(d);
        b.words({"administration", "."});
        break;
      case 3:
        b.words({"a", pick(rng, kPeople), "receiving", "oral"});
        b.drug(d);
        b.words({"presented", "with"});
        b.effect(e1, d);
        b.word("and");
        b.effect(e2, d);
        b.word(".");
        break;
      default:
        b.words({rng.bernoulli(0.5) ? "three" : "two", "day", "later", ",", "the",
                 pick(rng, kPeople), "on"});
        b.drug(d);
        b.word("developed");
        b.effect(e1, d);
        b.word(".");
        break;
    }
    return b;
  }
  // Two-drug sentences describe combination therapy: both drugs share the
  // effects, so the two samples carry identical ADE flags.
  if (rng.below(kPairTemplates) == 0) {
    b.words({"a", pick(rng, kPeople), "receiving"});
    b.drug(d);
    b.word("and");
    b.drug(other);
    b.word("developed");
    b.effect(e1, kBoth);
    b.word(".");
  } else {
    b.effect(e1, kBoth);
    b.words({"was", "associated", "with", "combined"});
    b.drug(d);
    b.word("and");
    b.drug(other);
    b.words({"treatment", "."});
  }
  return b;
}

std::vector<Sample> generate(Rng& rng, std::size_t count, const std::string& prefix,
                             std::set<std::vector<std::string>>& used) {
  std::vector<Sample> out;
  std::size_t sentence = 0;
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > 100000) throw UsageError("fixture generator cannot produce distinct sentences");
    const bool pair = count - out.size() >= 2 && rng.below(4) == 0;
    const SentenceBuilder b = build(rng, pair);
    const std::string sid = prefix + "." + std::to_string(sentence);
    auto samples = b.samples(sid);
    if (!used.insert(samples.front().tokens).second) continue;
    ++sentence;
    for (auto& s : samples) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

Fixture make_fixture(std::size_t train_samples, std::size_t held_out_samples,
                     std::uint64_t seed) {
  Fixture f;
  std::set<std::vector<std::string>> used;
  Rng train_rng(derive_seed(seed, 1));
  f.train = generate(train_rng, train_samples, "fx-train", used);
  Rng held_rng(derive_seed(seed, 2));
  f.held_out = generate(held_rng, held_out_samples, "fx-heldout", used);
  return f;
}

std::vector<std::string> fixture_raw_lines(const std::vector<Sample>& samples) {
  std::vector<std::string> lines;
  for (const auto& s : samples) {
    std::string sentence;
    std::vector<std::size_t> begin(s.size()), end(s.size());
    for (std::size_t t = 0; t < s.size(); ++t) {
      if (t > 0) sentence += ' ';
      begin[t] = sentence.size();
      sentence += s.tokens[t];
      end[t] = sentence.size();
    }
    std::string pos;
    for (std::size_t t = 0; t < s.size(); ++t) pos += (t ? " " : "") + s.pos[t];
    const std::size_t db = begin[s.drug_begin], de = end[s.drug_end - 1];
    for (std::size_t t = 0; t < s.size(); ++t) {
      if (!s.ade_labels[t] || (t > 0 && s.ade_labels[t - 1] && s.entity_labels[t] != "B-Disease")) {
        continue;
      }
      std::size_t u = t + 1;
      while (u < s.size() && s.ade_labels[u] && s.entity_labels[u] == "I-Disease") ++u;
      const std::size_t ab = begin[t], ae = end[u - 1];
      lines.push_back(s.sentence_id + "|" + sentence + "|" + sentence.substr(ab, ae - ab) + "|" +
                      std::to_string(ab) + "|" + std::to_string(ae) + "|" + s.drug_text + "|" +
                      std::to_string(db) + "|" + std::to_string(de) + "|" + pos);
    }
  }
  return lines;
}

}  // namespace adenet
