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

#ifndef ADENET_DATA_SAMPLE_H_
#define ADENET_DATA_SAMPLE_H_

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace adenet {

// Entity tag set. The predicted classes are the first kNumEntityLabels ids;
// kStartLabel only exists as a label-embedding row for the step before t = 0.
inline constexpr std::array<std::string_view, 5> kEntityLabels = {
    "O", "B-Drug", "I-Drug", "B-Disease", "I-Disease"};
inline constexpr std::size_t kNumEntityLabels = kEntityLabels.size();
inline constexpr std::size_t kOutsideLabel = 0;
inline constexpr std::size_t kStartLabel = kNumEntityLabels;
inline constexpr std::string_view kStartLabelName = "<start>";

// Returns the label id, or throws DataError for an unknown tag.
std::size_t entity_label_id(std::string_view tag);
bool is_disease_label(std::size_t id);
bool is_drug_label(std::size_t id);

// One drug-conditioned instance: a tokenized sentence, its entity tags, the
// query drug (as a token span of the same sentence) and per-token flags
// marking adverse effects of that drug.
struct Sample {
  std::string id;
  std::string sentence_id;
  std::vector<std::string> tokens;
  std::vector<std::string> pos;
  std::vector<std::string> entity_labels;
  std::size_t drug_begin = 0;
  std::size_t drug_end = 0;
  std::string drug_text;
  std::vector<int> ade_labels;

  std::size_t size() const { return tokens.size(); }
  std::vector<std::string> drug_tokens() const;

  bool operator==(const Sample&) const = default;
};

// Throws DataError describing the first violated invariant: equal per-token
// lengths, BIO well-formedness, ADE flags only on Disease tags, a non-empty
// drug span carrying Drug tags.
void validate_sample(const Sample& sample);

// One JSON object per line: id, sentence_id, tokens, pos, entity_labels,
// drug_span ([begin, end) token indices), drug_text, ade_labels.
std::string sample_to_json(const Sample& sample);
// When labels_required is false, missing entity_labels / ade_labels are
// filled with O / 0 (prediction inputs).
Sample sample_from_json(std::string_view line, bool labels_required = true);

void write_samples(const std::string& path, const std::vector<Sample>& samples);
std::vector<Sample> read_samples(const std::string& path, bool labels_required = true);

}  // namespace adenet

#endif  // ADENET_DATA_SAMPLE_H_
