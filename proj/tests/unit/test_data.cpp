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

#include <algorithm>
#include <filesystem>
#include <map>
#include <set>

#include <doctest.h>

#include "data/corpus.h"
#include "data/fixture.h"
#include "data/sample.h"
#include "data/tokenizer.h"
#include "util/error.h"
#include "util/io.h"
#include "util/rng.h"

namespace adenet {
namespace {

// Relation line for `sentence` with the first occurrences of `ade` and `drug`.
std::string relation(const std::string& doc, const std::string& sentence, const std::string& ade,
                     const std::string& drug) {
  const std::size_t a = sentence.find(ade);
  const std::size_t d = sentence.find(drug);
  REQUIRE(a != std::string::npos);
  REQUIRE(d != std::string::npos);
  return doc + "|" + sentence + "|" + ade + "|" + std::to_string(a) + "|" +
         std::to_string(a + ade.size()) + "|" + drug + "|" + std::to_string(d) + "|" +
         std::to_string(d + drug.size());
}

std::vector<Sample> convert_lines(const std::vector<std::string>& lines) {
  const auto parsed = parse_raw_lines(lines);
  REQUIRE(parsed.rejects.empty());
  const auto kept = drop_overlaps(parsed.records).kept;
  return reformulate(kept).samples;
}

// Content of a sample without its ids, for comparisons across id schemes.
using SampleKey = std::tuple<std::vector<std::string>, std::vector<std::string>, std::size_t,
                             std::size_t, std::vector<int>>;
SampleKey key_of(const Sample& s) {
  return {s.tokens, s.entity_labels, s.drug_begin, s.drug_end, s.ade_labels};
}
std::multiset<SampleKey> keys_of(const std::vector<Sample>& samples) {
  std::multiset<SampleKey> out;
  for (const auto& s : samples) out.insert(key_of(s));
  return out;
}

// Random sentence over disjoint drug and effect vocabularies, with relation
// lines linking each drug to a random nonempty subset of the effects.
std::vector<std::string> random_document(Rng& rng, const std::string& doc) {
  static const std::vector<std::string> drugs = {"aspirin", "5-FU", "heparin", "cisplatin"};
  static const std::vector<std::string> effects = {"rash", "renal failure", "fever",
                                                   "hepatic necrosis", "edema"};
  static const std::vector<std::string> filler = {"the", "patient", "was", "given", "and",
                                                  "developed", "after", ",", "with"};
  std::vector<std::string> ds = drugs, es = effects;
  rng.shuffle(ds);
  rng.shuffle(es);
  ds.resize(1 + rng.below(2));
  es.resize(1 + rng.below(3));
  std::vector<std::string> parts;
  for (const auto& d : ds) parts.push_back(d);
  for (const auto& e : es) parts.push_back(e);
  rng.shuffle(parts);
  std::string sentence;
  for (const auto& p : parts) {
    sentence += filler[rng.below(filler.size())] + " " + p + " ";
  }
  sentence += ".";
  std::vector<std::string> lines;
  for (const auto& d : ds) {
    bool any = false;
    for (const auto& e : es) {
      if (rng.bernoulli(0.6) || (!any && &e == &es.back())) {
        lines.push_back(relation(doc, sentence, e, d));
        any = true;
      }
    }
  }
  return lines;
}

}  // namespace

TEST_SUITE("data") {

TEST_CASE("tokenizer splits punctuation but keeps hyphenated names") {
  const auto t = tokenize("5-FU (high dose) caused rash.");
  std::vector<std::string> text;
  for (const auto& x : t) text.push_back(x.text);
  CHECK(text == std::vector<std::string>{"5-FU", "(", "high", "dose", ")", "caused", "rash", "."});
  CHECK(t[0].begin == 0);
  CHECK(t[0].end == 4);
  CHECK(t[7].begin == 28);
  const auto forced = tokenize("azithromycin-induced rash", {12});
  CHECK(forced[0].text == "azithromycin");
  CHECK(forced[1].text == "-induced");
  CHECK(to_lower_ascii("LiThium") == "lithium");
}

TEST_CASE("eight-field and nine-field lines parse") {
  const std::string s = "Lithium caused rash .";
  auto line = relation("d1", s, "rash", "Lithium");
  auto r = parse_raw_lines({line, line + "|NN VBD NN .", "", "   "});
  CHECK(r.rejects.empty());
  CHECK(r.lines == 2);
  REQUIRE(r.records.size() == 2);
  CHECK(r.records[1].pos_tags.size() == 4);
  CHECK(r.records[0].ade_begin == 15);
}

TEST_CASE("malformed lines are rejected with a reason") {
  auto r = parse_raw_lines({"a|b|c|1|2|d|3", "d|s x|x|a|3|s|0|1", "d|abc|zz|0|2|abc|0|3"});
  REQUIRE(r.rejects.size() == 3);
  CHECK(r.rejects[0].reason.find("field count") != std::string::npos);
  CHECK(r.rejects[0].line == 1);
  CHECK(r.rejects[1].reason.find("offset") != std::string::npos);
  CHECK(r.rejects[2].reason.find("offset") != std::string::npos);
  CHECK(r.records.empty());
}

TEST_CASE("document-anchored offsets are moved onto the sentence") {
  const std::string s = "Lithium caused rash and later more rash .";
  std::string line = relation("d1", s, "rash", "Lithium");
  // Shift both spans by 500 as if counted from the start of a document.
  line = "d1|" + s + "|rash|515|519|Lithium|500|507";
  auto r = parse_raw_lines({line});
  REQUIRE(r.records.size() == 1);
  CHECK(r.records[0].ade_begin == 15);
  CHECK(r.records[0].drug_begin == 0);
}

TEST_CASE("sentences where a drug overlaps an effect are dropped whole") {
  const std::string s = "lithium toxicity and lithium caused rash .";
  const std::string overlap = "d|" + s + "|lithium toxicity|0|16|lithium|0|7";
  const std::string plain = relation("d", s, "rash", "lithium");
  const std::string other = relation("e", "lithium caused rash .", "rash", "lithium");
  const auto parsed = parse_raw_lines({overlap, plain, other});
  const auto o = drop_overlaps(parsed.records);
  CHECK(o.overlapping_records == 1);
  CHECK(o.dropped_sentences == 1);
  CHECK(o.dropped.size() == 2);
  REQUIRE(o.kept.size() == 1);
  CHECK(o.kept[0].doc_id == "e");
}

TEST_CASE("one drug with two effects becomes one sample") {
  const std::string s = "Lithium caused rash and renal failure .";
  const auto samples =
      convert_lines({relation("d", s, "rash", "Lithium"), relation("d", s, "renal failure", "Lithium")});
  REQUIRE(samples.size() == 1);
  const Sample& x = samples[0];
  CHECK(x.entity_labels == std::vector<std::string>{"B-Drug", "O", "B-Disease", "O", "B-Disease",
                                                    "I-Disease", "O"});
  CHECK(x.ade_labels == std::vector<int>{0, 0, 1, 0, 1, 1, 0});
  CHECK(x.drug_begin == 0);
  CHECK(x.drug_end == 1);
  CHECK(x.pos == std::vector<std::string>(7, "<unk>"));
}

TEST_CASE("two drugs with separate effects give two samples with their own flags") {
  const std::string s = "aspirin gave rash while heparin gave fever .";
  const auto samples =
      convert_lines({relation("d", s, "rash", "aspirin"), relation("d", s, "fever", "heparin")});
  REQUIRE(samples.size() == 2);
  // Drugs are ordered by lowercased text.
  CHECK(samples[0].drug_text == "aspirin");
  CHECK(samples[0].ade_labels == std::vector<int>{0, 0, 1, 0, 0, 0, 0, 0});
  CHECK(samples[1].drug_text == "heparin");
  CHECK(samples[1].ade_labels == std::vector<int>{0, 0, 0, 0, 0, 0, 1, 0});
  CHECK(samples[0].entity_labels == samples[1].entity_labels);
  CHECK(samples[0].sentence_id == samples[1].sentence_id);
  CHECK(samples[0].id != samples[1].id);
}

TEST_CASE("property: converted samples satisfy the sample invariants") {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const auto lines = random_document(rng, "doc" + std::to_string(trial));
    const auto parsed = parse_raw_lines(lines);
    REQUIRE(parsed.rejects.empty());
    const auto result = reformulate(drop_overlaps(parsed.records).kept);
    CHECK(result.quarantined.empty());
    std::set<std::string> drugs;
    for (const auto& l : lines) drugs.insert(parse_raw_lines({l}).records[0].drug_text);
    CHECK(result.samples.size() == drugs.size());
    for (const auto& s : result.samples) {
      CHECK_NOTHROW(validate_sample(s));
      for (std::size_t t = 0; t < s.size(); ++t) {
        if (s.ade_labels[t]) CHECK(is_disease_label(entity_label_id(s.entity_labels[t])));
        const bool in_drug = t >= s.drug_begin && t < s.drug_end;
        if (in_drug) CHECK(is_drug_label(entity_label_id(s.entity_labels[t])));
      }
      CHECK(s.entity_labels[s.drug_begin] == "B-Drug");
    }
  }
}

TEST_CASE("property: conversion ignores record order") {
  Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::string> lines;
    for (int d = 0; d < 3; ++d) {
      auto doc = random_document(rng, "doc" + std::to_string(d));
      lines.insert(lines.end(), doc.begin(), doc.end());
    }
    const auto a = convert_lines(lines);
    rng.shuffle(lines);
    const auto b = convert_lines(lines);
    CHECK(a == b);
  }
}

TEST_CASE("property: converting rendered samples reproduces them") {
  const auto fx = make_fixture();
  std::vector<Sample> all = fx.train;
  all.insert(all.end(), fx.held_out.begin(), fx.held_out.end());
  const auto lines = fixture_raw_lines(all);
  auto once = convert_lines(lines);
  CHECK(keys_of(once) == keys_of(all));
  for (auto& s : once) s.pos.assign(s.size(), "x");
  const auto twice = convert_lines(fixture_raw_lines(once));
  CHECK(keys_of(twice) == keys_of(once));
}

TEST_CASE("split is 8:1:1 by sentence, deterministic and leak-free") {
  std::vector<Sample> samples;
  for (int i = 0; i < 100; ++i) {
    Sample s = make_fixture(1, 0, 1000 + i).train[0];
    s.sentence_id = "sent" + std::to_string(i);
    for (int k = 0; k < 1 + i % 2; ++k) {
      s.id = s.sentence_id + "#" + std::to_string(k);
      samples.push_back(s);
    }
  }
  auto sentences = [](const std::vector<Sample>& v) {
    std::set<std::string> out;
    for (const auto& s : v) out.insert(s.sentence_id);
    return out;
  };
  const Split a = split_samples(samples, 5);
  const Split b = split_samples(samples, 5);
  CHECK(sentences(a.train).size() == 80);
  CHECK(sentences(a.test).size() == 10);
  CHECK(sentences(a.validation).size() == 10);
  CHECK(a.train.size() + a.test.size() + a.validation.size() == samples.size());
  CHECK(a.train == b.train);
  CHECK(a.validation == b.validation);
  std::set<std::string> seen;
  for (const auto* part : {&a.train, &a.test, &a.validation}) {
    for (const auto& id : sentences(*part)) CHECK(seen.insert(id).second);
  }
  CHECK(split_samples(samples, 6).train != a.train);
}

TEST_CASE("sample JSON round trip and validation errors") {
  const Sample s = make_fixture(1, 0).train[0];
  CHECK(sample_from_json(sample_to_json(s)) == s);
  Sample bad = s;
  bad.entity_labels[0] = "I-Disease";
  if (s.entity_labels[0] == "O") CHECK_THROWS_AS(validate_sample(bad), DataError);
  bad = s;
  bad.ade_labels.pop_back();
  CHECK_THROWS_AS(validate_sample(bad), DataError);
  bad = s;
  for (std::size_t t = 0; t < s.size(); ++t) {
    if (s.entity_labels[t] == "O") {
      bad.ade_labels[t] = 1;
      break;
    }
  }
  CHECK_THROWS_AS(validate_sample(bad), DataError);
  CHECK_THROWS_AS(sample_from_json("{\"id\": 1}"), DataError);
  CHECK_THROWS_AS(sample_from_json("not json"), DataError);
  const Sample unlabeled = sample_from_json(
      R"({"id":"u","sentence_id":"u","tokens":["a","b"],"pos":["DT","NN"],"drug_span":[1,2],"drug_text":"b"})",
      false);
  CHECK(unlabeled.entity_labels == std::vector<std::string>{"O", "O"});
}

TEST_CASE("convert_corpus writes the partitions and stats") {
  const auto dir = std::filesystem::temp_directory_path() / "adenet_unit" / "convert";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  auto lines = fixture_raw_lines(make_fixture().train);
  lines.push_back("broken|line");
  std::string raw;
  for (const auto& l : lines) raw += l + "\n";
  write_file((dir / "raw.txt").string(), raw);
  const auto stats = convert_corpus((dir / "raw.txt").string(), (dir / "out").string(), 1);
  CHECK(stats.rejected_lines == 1);
  CHECK(stats.records == lines.size() - 1);
  CHECK(stats.samples == 32);
  CHECK(stats.train_samples + stats.test_samples + stats.validation_samples == 32);
  for (const char* f : {"train.jsonl", "val.jsonl", "test.jsonl", "rejects.tsv", "stats.json"}) {
    CHECK(std::filesystem::exists(dir / "out" / f));
  }
  CHECK(read_samples((dir / "out" / "train.jsonl").string()).size() == stats.train_samples);
}

TEST_CASE("fixture is deterministic and has the documented shape") {
  const auto a = make_fixture();
  const auto b = make_fixture();
  CHECK(a.train == b.train);
  CHECK(a.train.size() == 32);
  CHECK(a.held_out.size() == 8);
  std::set<std::string> words, drugs;
  for (const auto& s : a.train) {
    CHECK_NOTHROW(validate_sample(s));
    for (const auto& w : s.tokens) words.insert(w);
    drugs.insert(s.drug_text);
  }
  CHECK(words.size() >= 50);
  CHECK(words.size() <= 70);
  CHECK(drugs.size() == 2);
  std::set<std::vector<std::string>> train_sentences;
  for (const auto& s : a.train) train_sentences.insert(s.tokens);
  for (const auto& s : a.held_out) CHECK(!train_sentences.contains(s.tokens));
  CHECK(make_fixture(32, 8, 1).train != a.train);
}

}  // TEST_SUITE

}  // namespace adenet
