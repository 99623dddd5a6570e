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

#include "data/corpus.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "data/tokenizer.h"
#include "util/error.h"
#include "util/io.h"
#include "util/rng.h"

namespace adenet {
namespace {

std::vector<std::string> split_fields(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t p = line.find(sep, start);
    out.push_back(line.substr(start, p - start));
    if (p == std::string::npos) break;
    start = p + 1;
  }
  return out;
}

bool parse_offset(const std::string& s, std::size_t* out) {
  if (s.empty()) return false;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  auto [p, ec] = std::from_chars(b, e, *out);
  return ec == std::errc() && p == e;
}

bool slice_matches(const std::string& sentence, const std::string& text,
                   std::size_t begin, std::size_t end) {
  return end >= begin && end <= sentence.size() && end - begin == text.size() &&
         sentence.compare(begin, text.size(), text) == 0;
}

std::vector<std::size_t> occurrences(const std::string& hay, const std::string& needle) {
  std::vector<std::size_t> out;
  if (needle.empty()) return out;
  for (std::size_t p = hay.find(needle); p != std::string::npos;
       p = hay.find(needle, p + 1)) {
    out.push_back(p);
  }
  return out;
}

bool intersects(std::size_t b1, std::size_t e1, std::size_t b2, std::size_t e2) {
  return b1 < e2 && b2 < e1;
}

struct CharSpan {
  std::size_t begin;
  std::size_t end;
  auto operator<=>(const CharSpan&) const = default;
};

// Unions overlapping spans of one entity type.
std::vector<CharSpan> merge_spans(std::vector<CharSpan> spans) {
  std::sort(spans.begin(), spans.end());
  std::vector<CharSpan> out;
  for (const auto& s : spans) {
    if (!out.empty() && s.begin < out.back().end) {
      out.back().end = std::max(out.back().end, s.end);
    } else {
      out.push_back(s);
    }
  }
  return out;
}

// Trims surrounding whitespace so span edges fall on token characters.
CharSpan trim_span(const std::string& sentence, CharSpan s) {
  while (s.begin < s.end && std::isspace(static_cast<unsigned char>(sentence[s.begin]))) ++s.begin;
  while (s.end > s.begin && std::isspace(static_cast<unsigned char>(sentence[s.end - 1]))) --s.end;
  return s;
}

// Token range [first, last) exactly covering the span, or false.
bool align(const std::vector<Token>& tokens, CharSpan s, std::size_t* first,
           std::size_t* last) {
  std::size_t f = SIZE_MAX, l = SIZE_MAX;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].begin == s.begin) f = i;
    if (tokens[i].end == s.end) l = i + 1;
  }
  if (f == SIZE_MAX || l == SIZE_MAX || f >= l) return false;
  *first = f;
  *last = l;
  return true;
}

void tag_span(std::vector<std::string>& labels, std::size_t first, std::size_t last,
              const char* type) {
  for (std::size_t t = first; t < last; ++t) {
    labels[t] = std::string(t == first ? "B-" : "I-") + type;
  }
}

}  // namespace

bool normalize_offsets(RawRecord& r, std::string* reason) {
  const bool ade_ok = slice_matches(r.sentence, r.ade_text, r.ade_begin, r.ade_end);
  const bool drug_ok = slice_matches(r.sentence, r.drug_text, r.drug_begin, r.drug_end);
  if (ade_ok && drug_ok) return true;

  const auto ade_hits = occurrences(r.sentence, r.ade_text);
  const auto drug_hits = occurrences(r.sentence, r.drug_text);
  if (ade_hits.empty() || drug_hits.empty()) {
    if (reason != nullptr) {
      *reason = ade_hits.empty() ? "effect text not found in sentence"
                                 : "drug text not found in sentence";
    }
    return false;
  }
  // Both offsets share one unknown anchor, so their difference survives.
  const auto want = static_cast<long long>(r.ade_begin) - static_cast<long long>(r.drug_begin);
  std::size_t best_a = ade_hits[0], best_d = drug_hits[0];
  long long best_cost = -1;
  for (std::size_t a : ade_hits) {
    for (std::size_t d : drug_hits) {
      const long long diff = static_cast<long long>(a) - static_cast<long long>(d);
      const long long cost = std::llabs(diff - want);
      if (best_cost < 0 || cost < best_cost) {
        best_cost = cost;
        best_a = a;
        best_d = d;
      }
    }
  }
  r.ade_begin = best_a;
  r.ade_end = best_a + r.ade_text.size();
  r.drug_begin = best_d;
  r.drug_end = best_d + r.drug_text.size();
  return true;
}

ParseResult parse_raw_lines(const std::vector<std::string>& lines) {
  ParseResult result;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    ++result.lines;
    const std::size_t lineno = i + 1;
    auto reject = [&](const std::string& why) {
      result.rejects.push_back({lineno, why, line});
    };
    const auto f = split_fields(line, '|');
    if (f.size() != 8 && f.size() != 9) {
      reject("field count: expected 8, got " + std::to_string(f.size()));
      continue;
    }
    RawRecord r;
    r.doc_id = f[0];
    r.sentence = f[1];
    r.ade_text = f[2];
    r.drug_text = f[5];
    r.line = lineno;
    if (!parse_offset(f[3], &r.ade_begin) || !parse_offset(f[4], &r.ade_end) ||
        !parse_offset(f[6], &r.drug_begin) || !parse_offset(f[7], &r.drug_end)) {
      reject("offset: not a non-negative integer");
      continue;
    }
    if (r.sentence.empty() || r.ade_text.empty() || r.drug_text.empty()) {
      reject("empty sentence or annotation text");
      continue;
    }
    if (f.size() == 9) {
      std::istringstream ss(f[8]);
      for (std::string tag; ss >> tag;) r.pos_tags.push_back(tag);
    }
    std::string why;
    if (!normalize_offsets(r, &why)) {
      reject("offset: " + why);
      continue;
    }
    result.records.push_back(std::move(r));
  }
  return result;
}

ParseResult parse_raw(const std::string& path) { return parse_raw_lines(read_lines(path)); }

OverlapResult drop_overlaps(const std::vector<RawRecord>& records) {
  std::map<std::string, std::vector<std::size_t>> by_sentence;
  for (std::size_t i = 0; i < records.size(); ++i) {
    by_sentence[records[i].sentence_key()].push_back(i);
  }
  OverlapResult result;
  std::vector<bool> drop(records.size(), false);
  for (const auto& [key, ids] : by_sentence) {
    bool overlap = false;
    for (std::size_t i : ids) {
      const RawRecord& a = records[i];
      if (intersects(a.drug_begin, a.drug_end, a.ade_begin, a.ade_end)) {
        ++result.overlapping_records;
      }
      for (std::size_t j : ids) {
        const RawRecord& b = records[j];
        if (intersects(a.drug_begin, a.drug_end, b.ade_begin, b.ade_end)) overlap = true;
      }
    }
    if (overlap) {
      ++result.dropped_sentences;
      for (std::size_t i : ids) drop[i] = true;
    }
  }
  for (std::size_t i = 0; i < records.size(); ++i) {
    (drop[i] ? result.dropped : result.kept).push_back(records[i]);
  }
  return result;
}

ReformulateResult reformulate(const std::vector<RawRecord>& records) {
  // Canonical grouping: sentences sorted by (doc, text); drugs by lowercased
  // text. Sorting makes the output independent of input order.
  std::map<std::string, std::vector<const RawRecord*>> by_sentence;
  for (const auto& r : records) by_sentence[r.sentence_key()].push_back(&r);

  ReformulateResult result;
  std::map<std::string, std::size_t> doc_sentence_counter;
  for (const auto& [key, group] : by_sentence) {
    const RawRecord& first = *group.front();
    const std::string& sentence = first.sentence;
    const std::string sentence_id =
        first.doc_id + "." + std::to_string(doc_sentence_counter[first.doc_id]++);

    std::vector<CharSpan> drug_spans, ade_spans;
    std::map<std::string, std::pair<std::set<CharSpan>, std::set<CharSpan>>> by_drug;
    std::set<std::size_t> breaks;
    for (const RawRecord* r : group) {
      const CharSpan d = trim_span(sentence, {r->drug_begin, r->drug_end});
      const CharSpan a = trim_span(sentence, {r->ade_begin, r->ade_end});
      drug_spans.push_back(d);
      ade_spans.push_back(a);
      auto& entry = by_drug[to_lower_ascii(r->drug_text)];
      entry.first.insert(d);
      entry.second.insert(a);
      for (std::size_t b : {d.begin, d.end, a.begin, a.end}) breaks.insert(b);
    }
    const auto tokens = tokenize(sentence, breaks);

    std::vector<std::string> labels(tokens.size(), std::string(kEntityLabels[kOutsideLabel]));
    bool misaligned = false;
    std::string diagnostic;
    auto tag_all = [&](const std::vector<CharSpan>& spans, const char* type) {
      for (const auto& s : merge_spans(spans)) {
        std::size_t f, l;
        if (!align(tokens, s, &f, &l)) {
          misaligned = true;
          diagnostic = std::string(type) + " span [" + std::to_string(s.begin) + ", " +
                       std::to_string(s.end) + ") does not align with token boundaries";
          return;
        }
        tag_span(labels, f, l, type);
      }
    };
    tag_all(ade_spans, "Disease");
    if (!misaligned) tag_all(drug_spans, "Drug");
    if (misaligned) {
      result.quarantined.push_back({key, diagnostic});
      continue;
    }

    std::vector<std::string> pos;
    if (first.pos_tags.size() == tokens.size()) {
      pos = first.pos_tags;
    } else {
      pos.assign(tokens.size(), "<unk>");
    }
    std::vector<std::string> token_text;
    for (const auto& t : tokens) token_text.push_back(t.text);

    std::size_t k = 0;
    for (const auto& [drug_key, spans] : by_drug) {
      Sample s;
      s.id = sentence_id + "#" + std::to_string(k++);
      s.sentence_id = sentence_id;
      s.tokens = token_text;
      s.pos = pos;
      s.entity_labels = labels;
      s.ade_labels.assign(tokens.size(), 0);
      // Earliest annotated mention serves as the query span.
      const CharSpan query = *spans.first.begin();
      std::size_t f = 0, l = 0;
      align(tokens, query, &f, &l);
      s.drug_begin = f;
      s.drug_end = l;
      s.drug_text = sentence.substr(query.begin, query.end - query.begin);
      for (const auto& a : spans.second) {
        std::size_t af = 0, al = 0;
        align(tokens, a, &af, &al);
        for (std::size_t t = af; t < al; ++t) s.ade_labels[t] = 1;
      }
      // Merged drug spans may widen the query mention's tags; the drug span
      // itself is taken from the merged tagging so it stays Drug-tagged.
      while (s.drug_begin > 0 && s.entity_labels[s.drug_begin] == "I-Drug") --s.drug_begin;
      while (s.drug_end < tokens.size() && s.entity_labels[s.drug_end] == "I-Drug") ++s.drug_end;
      try {
        validate_sample(s);
      } catch (const DataError& e) {
        result.quarantined.push_back({key, e.what()});
        continue;
      }
      result.samples.push_back(std::move(s));
    }
  }
  return result;
}

Split split_samples(const std::vector<Sample>& samples, std::uint64_t seed) {
  std::map<std::string, std::vector<std::size_t>> by_sentence;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    by_sentence[samples[i].sentence_id].push_back(i);
  }
  std::vector<std::string> sentences;
  for (const auto& [id, _] : by_sentence) sentences.push_back(id);
  Rng rng(seed);
  rng.shuffle(sentences);

  const std::size_t n = sentences.size();
  const std::size_t n_train = (8 * n + 5) / 10;
  const std::size_t n_test = std::min(n - n_train, (n + 5) / 10);
  Split split;
  for (std::size_t i = 0; i < n; ++i) {
    auto& dst = i < n_train ? split.train
                : i < n_train + n_test ? split.test
                                       : split.validation;
    for (std::size_t k : by_sentence[sentences[i]]) dst.push_back(samples[k]);
  }
  return split;
}

std::string stats_to_json(const ConvertStats& s) {
  nlohmann::ordered_json j;
  j["lines"] = s.lines;
  j["records"] = s.records;
  j["rejected_lines"] = s.rejected_lines;
  j["sentences"] = s.sentences;
  j["overlapping_records"] = s.overlapping_records;
  j["dropped_sentences"] = s.dropped_sentences;
  j["dropped_records"] = s.dropped_records;
  j["quarantined_sentences"] = s.quarantined_sentences;
  j["samples"] = s.samples;
  j["train"] = {{"samples", s.train_samples}, {"sentences", s.train_sentences}};
  j["validation"] = {{"samples", s.validation_samples}, {"sentences", s.validation_sentences}};
  j["test"] = {{"samples", s.test_samples}, {"sentences", s.test_sentences}};
  return j.dump(2) + "\n";
}

ConvertStats convert_corpus(const std::string& raw_path, const std::string& out_dir,
                            std::uint64_t seed) {
  const ParseResult parsed = parse_raw(raw_path);
  ConvertStats stats;
  stats.lines = parsed.lines;
  stats.records = parsed.records.size();
  stats.rejected_lines = parsed.rejects.size();
  {
    std::set<std::string> keys;
    for (const auto& r : parsed.records) keys.insert(r.sentence_key());
    stats.sentences = keys.size();
  }
  const OverlapResult overlaps = drop_overlaps(parsed.records);
  stats.overlapping_records = overlaps.overlapping_records;
  stats.dropped_sentences = overlaps.dropped_sentences;
  stats.dropped_records = overlaps.dropped.size();

  const ReformulateResult reform = reformulate(overlaps.kept);
  {
    std::set<std::string> keys;
    for (const auto& q : reform.quarantined) keys.insert(q.sentence_key);
    stats.quarantined_sentences = keys.size();
  }
  stats.samples = reform.samples.size();

  const Split split = split_samples(reform.samples, seed);
  auto count_sentences = [](const std::vector<Sample>& v) {
    std::set<std::string> ids;
    for (const auto& s : v) ids.insert(s.sentence_id);
    return ids.size();
  };
  stats.train_samples = split.train.size();
  stats.test_samples = split.test.size();
  stats.validation_samples = split.validation.size();
  stats.train_sentences = count_sentences(split.train);
  stats.test_sentences = count_sentences(split.test);
  stats.validation_sentences = count_sentences(split.validation);

  ensure_directory(out_dir);
  const std::filesystem::path dir(out_dir);
  write_samples((dir / "train.jsonl").string(), split.train);
  write_samples((dir / "val.jsonl").string(), split.validation);
  write_samples((dir / "test.jsonl").string(), split.test);

  std::string rejects = "line\treason\ttext\n";
  for (const auto& r : parsed.rejects) {
    rejects += std::to_string(r.line) + "\t" + r.reason + "\t" + r.text + "\n";
  }
  write_file((dir / "rejects.tsv").string(), rejects);
  std::string quarantine = "sentence\treason\n";
  for (const auto& q : reform.quarantined) {
    std::string key = q.sentence_key;
    std::replace(key.begin(), key.end(), '\t', ' ');
    quarantine += key + "\t" + q.reason + "\n";
  }
  write_file((dir / "quarantine.tsv").string(), quarantine);
  write_file((dir / "stats.json").string(), stats_to_json(stats));
  return stats;
}

}  // namespace adenet
