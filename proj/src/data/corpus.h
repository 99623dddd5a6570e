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

#ifndef ADENET_DATA_CORPUS_H_
#define ADENET_DATA_CORPUS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "data/sample.h"

namespace adenet {

// One line of the drug/adverse-effect relation file:
//   doc_id|sentence|ade_text|ade_begin|ade_end|drug_text|drug_begin|drug_end
// with an optional ninth field of space-separated PoS tags. Offsets are
// byte offsets, end exclusive, and after parsing always index the sentence.
struct RawRecord {
  std::string doc_id;
  std::string sentence;
  std::string ade_text;
  std::size_t ade_begin = 0;
  std::size_t ade_end = 0;
  std::string drug_text;
  std::size_t drug_begin = 0;
  std::size_t drug_end = 0;
  std::vector<std::string> pos_tags;
  std::size_t line = 0;

  std::string sentence_key() const { return doc_id + '\t' + sentence; }
};

struct RejectedLine {
  std::size_t line = 0;
  std::string reason;
  std::string text;
};

struct ParseResult {
  std::vector<RawRecord> records;
  std::vector<RejectedLine> rejects;
  std::size_t lines = 0;  // non-blank lines seen
};

ParseResult parse_raw_lines(const std::vector<std::string>& lines);
ParseResult parse_raw(const std::string& path);

// Moves the record's offsets onto the sentence. Offsets that already slice
// the annotation text are kept; otherwise (document-anchored corpora) the
// occurrence pair preserving the drug-to-effect distance is chosen. Returns
// false with a reason when the text does not occur in the sentence.
bool normalize_offsets(RawRecord& record, std::string* reason);

struct OverlapResult {
  std::vector<RawRecord> kept;
  std::vector<RawRecord> dropped;
  // Records whose own drug span intersects their own effect span.
  std::size_t overlapping_records = 0;
  std::size_t dropped_sentences = 0;
};

// Removes every record of any sentence in which some drug span and some
// effect span intersect.
OverlapResult drop_overlaps(const std::vector<RawRecord>& records);

struct Quarantined {
  std::string sentence_key;
  std::string reason;
};

struct ReformulateResult {
  std::vector<Sample> samples;
  std::vector<Quarantined> quarantined;
};

// Groups records by (sentence, drug), tags drug mentions B/I-Drug and every
// effect mention B/I-Disease, and marks as ADE-positive only the effects
// annotated for that sample's drug. Output order is canonical: independent of
// the input record order.
ReformulateResult reformulate(const std::vector<RawRecord>& records);

struct Split {
  std::vector<Sample> train;
  std::vector<Sample> test;
  std::vector<Sample> validation;
};

// 8:1:1 by sentence: all samples of one sentence land in one partition.
Split split_samples(const std::vector<Sample>& samples, std::uint64_t seed);

struct ConvertStats {
  std::size_t lines = 0;
  std::size_t records = 0;
  std::size_t rejected_lines = 0;
  std::size_t sentences = 0;  // distinct (doc, sentence) pairs ingested
  std::size_t overlapping_records = 0;
  std::size_t dropped_sentences = 0;
  std::size_t dropped_records = 0;
  std::size_t quarantined_sentences = 0;
  std::size_t samples = 0;
  std::size_t train_samples = 0;
  std::size_t test_samples = 0;
  std::size_t validation_samples = 0;
  std::size_t train_sentences = 0;
  std::size_t test_sentences = 0;
  std::size_t validation_sentences = 0;
};

// Full preprocessing chain. Writes train.jsonl, val.jsonl, test.jsonl,
// rejects.tsv, quarantine.tsv and stats.json into out_dir.
ConvertStats convert_corpus(const std::string& raw_path, const std::string& out_dir,
                            std::uint64_t seed);

std::string stats_to_json(const ConvertStats& stats);

}  // namespace adenet

#endif  // ADENET_DATA_CORPUS_H_
