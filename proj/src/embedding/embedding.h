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

#ifndef ADENET_EMBEDDING_EMBEDDING_H_
#define ADENET_EMBEDDING_EMBEDDING_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "autodiff/ops.h"
#include "autodiff/params.h"
#include "embedding/vocab.h"

namespace adenet {

struct EmbeddingConfig {
  std::size_t word_dim = 200;  // per instance; fixed + variable = 2x
  std::size_t char_dim = 25;
  std::vector<std::size_t> char_widths = {1, 2, 3, 4, 5, 6};
  std::size_t char_filters_per_width = 25;  // bank of width w has this * w filters
  std::size_t pos_dim = 25;
  std::size_t label_dim = 25;
  bool use_char = true;
  bool use_pos = true;

  std::size_t word_repr_dim() const { return 2 * word_dim; }
  std::size_t char_repr_dim() const;
  std::size_t max_char_width() const;
  std::size_t feature_dim() const;
};

// Ids of one token, resolved against a Vocab once per sample.
struct TokenIds {
  std::size_t word = Vocab::kUnk;
  std::vector<std::size_t> chars;
  std::size_t pos = Vocab::kPosUnk;
};

TokenIds token_ids(const Vocab& vocab, const std::string& token, const std::string& pos);

struct PretrainedStats {
  std::size_t file_words = 0;
  std::size_t covered = 0;  // vocabulary words that received a pretrained row
  bool loaded = false;
};

// Input representation for one token: [fixed word; variable word; char CNN;
// PoS], plus the label-embedding table used by the prediction heads. The
// fixed word table is registered frozen and never receives gradients.
class EmbeddingStack {
 public:
  EmbeddingStack() = default;
  EmbeddingStack(const EmbeddingConfig& config, const Vocab& vocab, ParamStore& params);

  const EmbeddingConfig& config() const { return config_; }

  Var word_repr(Tape& tape, std::size_t word_id) const;
  Var char_repr(Tape& tape, std::span<const std::size_t> char_ids) const;
  Var pos_repr(Tape& tape, std::size_t pos_id) const;
  Var label_repr(Tape& tape, std::size_t label_id) const;
  // Concatenation of the enabled segments, feature_dim() long.
  Var token_features(Tape& tape, const TokenIds& ids) const;

  ParamId fixed_table() const { return fixed_; }
  ParamId variable_table() const { return variable_; }
  ParamId char_table() const { return char_table_; }
  const std::vector<ParamId>& char_filters() const { return char_filters_; }
  const std::vector<ParamId>& char_biases() const { return char_biases_; }
  ParamId pos_table() const { return pos_table_; }
  ParamId label_table() const { return label_table_; }

  // Reads a textual word2vec file ("V d" header, then "word v1 .. vd").
  // Rows for covered words are copied into both word tables; other rows keep
  // their current values. With allow_missing, an absent file logs a warning
  // and returns loaded == false.
  PretrainedStats load_pretrained(ParamStore& params, const Vocab& vocab,
                                  const std::string& path, bool allow_missing) const;

 private:
  EmbeddingConfig config_;
  ParamId fixed_ = 0;
  ParamId variable_ = 0;
  ParamId char_table_ = 0;
  std::vector<ParamId> char_filters_;
  std::vector<ParamId> char_biases_;
  ParamId pos_table_ = 0;
  ParamId label_table_ = 0;
};

}  // namespace adenet

#endif  // ADENET_EMBEDDING_EMBEDDING_H_
