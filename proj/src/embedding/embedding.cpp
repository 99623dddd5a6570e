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

#include "embedding/embedding.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "data/tokenizer.h"
#include "util/error.h"
#include "util/io.h"

namespace adenet {

std::size_t EmbeddingConfig::char_repr_dim() const {
  std::size_t n = 0;
  for (std::size_t w : char_widths) n += char_filters_per_width * w;
  return n;
}

std::size_t EmbeddingConfig::max_char_width() const {
  return char_widths.empty() ? 0 : *std::max_element(char_widths.begin(), char_widths.end());
}

std::size_t EmbeddingConfig::feature_dim() const {
  return word_repr_dim() + (use_char ? char_repr_dim() : 0) + (use_pos ? pos_dim : 0);
}

TokenIds token_ids(const Vocab& vocab, const std::string& token, const std::string& pos) {
  TokenIds ids;
  ids.word = vocab.word_id(token);
  ids.chars = vocab.char_ids(token);
  ids.pos = vocab.pos_id(pos);
  return ids;
}

EmbeddingStack::EmbeddingStack(const EmbeddingConfig& config, const Vocab& vocab,
                               ParamStore& params)
    : config_(config) {
  if (config_.word_dim == 0 || config_.label_dim == 0) {
    throw UsageError("embedding dimensions must be positive");
  }
  fixed_ = params.add("emb_fixed", {vocab.word_count(), config_.word_dim}, false);
  variable_ = params.add("emb_variable", {vocab.word_count(), config_.word_dim});
  if (config_.use_char) {
    if (config_.char_widths.empty() || config_.char_dim == 0 ||
        config_.char_filters_per_width == 0) {
      throw UsageError("character CNN enabled with an empty filter configuration");
    }
    std::set<std::size_t> seen;
    for (std::size_t w : config_.char_widths) {
      if (w == 0 || !seen.insert(w).second) {
        throw UsageError("character filter widths must be distinct and positive");
      }
    }
    char_table_ = params.add("char_table", {vocab.char_count(), config_.char_dim});
    for (std::size_t w : config_.char_widths) {
      const std::size_t bank = config_.char_filters_per_width * w;
      char_filters_.push_back(
          params.add("char_filters_w" + std::to_string(w), {bank, w * config_.char_dim}));
      char_biases_.push_back(params.add("char_bias_w" + std::to_string(w), {bank}));
    }
  }
  if (config_.use_pos) {
    if (config_.pos_dim == 0) throw UsageError("PoS features enabled with pos_dim 0");
    pos_table_ = params.add("pos_table", {vocab.pos_count(), config_.pos_dim});
  }
  label_table_ = params.add("label_table", {Vocab::label_count(), config_.label_dim});
}

Var EmbeddingStack::word_repr(Tape& tape, std::size_t word_id) const {
  return ad::concat({ad::lookup(tape.param(fixed_), word_id),
                     ad::lookup(tape.param(variable_), word_id)});
}

Var EmbeddingStack::char_repr(Tape& tape, std::span<const std::size_t> char_ids) const {
  if (char_ids.empty()) throw DataError("character representation of an empty word");
  Var table = tape.param(char_table_);
  std::vector<Var> rows;
  rows.reserve(std::max(char_ids.size(), config_.max_char_width()));
  for (std::size_t id : char_ids) rows.push_back(ad::lookup(table, id));
  // Short words are zero-padded so every filter bank has a valid window.
  if (rows.size() < config_.max_char_width()) {
    Var zero = tape.constant(Tensor(Shape{config_.char_dim}));
    while (rows.size() < config_.max_char_width()) rows.push_back(zero);
  }
  Var matrix = ad::stack(rows);
  std::vector<Var> banks;
  for (std::size_t k = 0; k < config_.char_widths.size(); ++k) {
    banks.push_back(ad::conv_max(matrix, tape.param(char_filters_[k]),
                                 tape.param(char_biases_[k]), config_.char_widths[k]));
  }
  return ad::concat(banks);
}

Var EmbeddingStack::pos_repr(Tape& tape, std::size_t pos_id) const {
  return ad::lookup(tape.param(pos_table_), pos_id);
}

Var EmbeddingStack::label_repr(Tape& tape, std::size_t label_id) const {
  return ad::lookup(tape.param(label_table_), label_id);
}

Var EmbeddingStack::token_features(Tape& tape, const TokenIds& ids) const {
  std::vector<Var> parts = {word_repr(tape, ids.word)};
  if (config_.use_char) parts.push_back(char_repr(tape, ids.chars));
  if (config_.use_pos) parts.push_back(pos_repr(tape, ids.pos));
  return ad::concat(parts);
}

PretrainedStats EmbeddingStack::load_pretrained(ParamStore& params, const Vocab& vocab,
                                                const std::string& path,
                                                bool allow_missing) const {
  PretrainedStats stats;
  std::ifstream in(path);
  if (!in) {
    if (allow_missing) {
      log_warning("pretrained embeddings '" + path +
                  "' not found; word tables stay randomly initialized");
      return stats;
    }
    throw DataError("cannot open pretrained embeddings " + path);
  }
  std::string line;
  if (!std::getline(in, line)) throw DataError(path + ":1: empty embedding file");
  std::size_t declared = 0, dim = 0;
  {
    std::istringstream hs(line);
    if (!(hs >> declared >> dim)) throw DataError(path + ":1: header must be \"V d\"");
  }
  if (dim != config_.word_dim) {
    throw DimensionError(path + ": embedding dimension " + std::to_string(dim) +
                         " does not match configured word_dim " +
                         std::to_string(config_.word_dim));
  }
  Tensor& fixed = params[fixed_].value;
  Tensor& variable = params[variable_].value;
  std::vector<bool> filled(vocab.word_count(), false);
  std::vector<double> row(dim);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(' ') == std::string::npos) continue;
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    for (std::size_t k = 0; k < dim; ++k) {
      std::string tok;
      if (!(ls >> tok)) {
        throw DataError(path + ":" + std::to_string(lineno) + ": expected " +
                        std::to_string(dim) + " values after '" + word + "'");
      }
      const char* b = tok.data();
      const char* e = tok.data() + tok.size();
      auto [p, ec] = std::from_chars(b, e, row[k]);
      if (ec != std::errc() || p != e) {
        throw DataError(path + ":" + std::to_string(lineno) + ": malformed value '" + tok + "'");
      }
    }
    if (std::string extra; ls >> extra) {
      throw DataError(path + ":" + std::to_string(lineno) + ": more than " +
                      std::to_string(dim) + " values");
    }
    ++stats.file_words;
    const std::string key = to_lower_ascii(word);
    if (!vocab.words().contains(key)) continue;
    const std::size_t id = vocab.words().get(key, Vocab::kUnk);
    if (id == Vocab::kPad || id == Vocab::kUnk || filled[id]) continue;
    filled[id] = true;
    ++stats.covered;
    std::copy(row.begin(), row.end(), fixed.row(id).begin());
    std::copy(row.begin(), row.end(), variable.row(id).begin());
  }
  if (declared != stats.file_words) {
    log_warning(path + ": header declares " + std::to_string(declared) + " words, found " +
                std::to_string(stats.file_words));
  }
  stats.loaded = true;
  return stats;
}

}  // namespace adenet
