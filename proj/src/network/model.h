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

#ifndef ADENET_NETWORK_MODEL_H_
#define ADENET_NETWORK_MODEL_H_

#include <cstddef>
#include <vector>

#include <json.hpp>

#include "autodiff/ops.h"
#include "autodiff/params.h"
#include "data/sample.h"
#include "embedding/embedding.h"
#include "embedding/vocab.h"
#include "util/rng.h"

namespace adenet {

struct ModelConfig {
  EmbeddingConfig embedding;
  std::size_t hidden = 150;        // per direction
  std::size_t combine_dim = 300;   // width of the entity-to-ADE projection
  bool use_attention = true;
  // Drug query tokens go through the full token_features pathway; when false
  // only the word segment is used and the remaining feature slots are zero.
  bool drug_full_features = true;
  double dropout = 0.5;
  bool teacher_forcing = false;
  double ade_weight = 1.0;

  std::size_t state_dim() const { return 2 * hidden; }
  std::size_t entity_repr_dim() const { return embedding.label_dim + 2 * state_dim(); }
  std::size_t ade_repr_dim() const { return state_dim() + combine_dim + embedding.label_dim; }

  nlohmann::ordered_json to_json() const;
  static ModelConfig from_json(const nlohmann::json& j);
};

enum class ForwardMode {
  kTeacherForced,  // gold labels feed the label embeddings; dropout on
  kFreeRunning,    // predicted labels feed the label embeddings; dropout on
  kInference,      // predicted labels; dropout off
};

struct EncodedSample {
  std::vector<TokenIds> tokens;
  std::size_t drug_begin = 0;
  std::size_t drug_end = 0;
  std::vector<std::size_t> entity;  // gold label ids
  std::vector<int> ade;             // gold ADE flags

  std::size_t size() const { return tokens.size(); }
};

// Per-direction LSTM weights. Gate blocks of W, U and b are laid out
// input, forget, cell, output.
struct LstmParams {
  ParamId w = 0;  // [4H x D_in]
  ParamId u = 0;  // [4H x H]
  ParamId b = 0;  // [4H]
};

struct LstmState {
  Var h;
  Var c;
};

struct EncodedSequence {
  std::vector<Var> states;  // one [2H] state per position, including padding
  std::vector<Var> forward;
  std::vector<Var> backward;
  Var matrix;               // states stacked, [P x 2H]
  ad::Mask mask;            // 1 for real tokens
};

struct AttentionStep {
  Var context;  // weighted sum of states
  Var weights;  // [P], zero on masked positions
};

struct EntityStep {
  Var dist;  // [L]
  Var repr;  // r_ent
};

// Everything one pass produces for a sample; matrices are row-major copies.
struct ForwardTrace {
  Tensor entity_dists;  // [T x L]
  Tensor ade_dists;     // [T x 2]
  Tensor attention;     // [T x P], P >= T
  std::vector<std::size_t> predicted_labels;
  std::vector<int> predicted_ade;
};

struct ForwardOptions {
  // When larger than T, the encoded sequence is padded with masked zero
  // states up to this length (exercises the masking path).
  std::size_t pad_to = 0;
};

struct ForwardResult {
  ForwardTrace trace;
  Var loss;  // mean over tokens of entity CE + ade_weight * ADE CE
};

// Joint entity/ADE tagger. The model owns its configuration, vocabulary and
// parameter store; forward passes only read parameters and record onto the
// caller's tape, so concurrent passes against one model are safe.
class Model {
 public:
  Model(ModelConfig config, Vocab vocab);

  Model(const Model&) = delete;
  Model& operator=(const Model&) = delete;

  const ModelConfig& config() const { return config_; }
  const Vocab& vocab() const { return vocab_; }
  ParamStore& params() { return params_; }
  const ParamStore& params() const { return params_; }
  const EmbeddingStack& embeddings() const { return embeddings_; }

  const LstmParams& lstm_forward() const { return lstm_fwd_; }
  const LstmParams& lstm_backward() const { return lstm_bwd_; }
  ParamId attention_weight() const { return w_att_; }
  ParamId entity_weight() const { return w_ent_; }
  ParamId entity_bias() const { return b_ent_; }
  ParamId combine_weight() const { return w_c_; }
  ParamId combine_bias() const { return b_c_; }
  ParamId ade_weight() const { return w_ade_; }
  ParamId ade_bias() const { return b_ade_; }

  // Uniform(-range, range) on every tensor, frozen ones included, from one
  // generator in registration order.
  void init_uniform(double range, std::uint64_t seed);

  EncodedSample encode_sample(const Sample& sample) const;

  LstmState lstm_cell(Tape& tape, const LstmParams& p, Var x, const LstmState& prev) const;
  // Bidirectional pass from zero initial states. Dropout (training only) is
  // applied to the inputs and to the concatenated outputs.
  EncodedSequence encode(Tape& tape, const std::vector<Var>& features, bool training,
                         Rng* rng, std::size_t pad_to = 0) const;
  // Same encoder; returns [final forward state; final backward state].
  Var encode_drug(Tape& tape, const std::vector<Var>& features, bool training, Rng* rng) const;
  AttentionStep attend(Tape& tape, const EncodedSequence& enc, std::size_t t) const;
  EntityStep entity_step(Tape& tape, const EncodedSequence& enc, std::size_t t,
                         std::size_t prev_label, Var context) const;
  Var ade_step(Tape& tape, Var entity_repr, std::size_t label, Var drug) const;

  // Drug query features for the sample's drug span.
  std::vector<Var> drug_features(Tape& tape, const EncodedSample& s) const;

  ForwardResult forward(Tape& tape, const EncodedSample& sample, ForwardMode mode,
                        Rng* rng, const ForwardOptions& options = {}) const;

  // Inference-mode trace on a fresh tape.
  ForwardTrace predict(const EncodedSample& sample, const ForwardOptions& options = {}) const;

 private:
  ModelConfig config_;
  Vocab vocab_;
  ParamStore params_;
  EmbeddingStack embeddings_;
  LstmParams lstm_fwd_;
  LstmParams lstm_bwd_;
  ParamId w_att_ = 0;
  ParamId w_ent_ = 0, b_ent_ = 0;
  ParamId w_c_ = 0, b_c_ = 0;
  ParamId w_ade_ = 0, b_ade_ = 0;
};

std::size_t argmax(std::span<const double> values);

}  // namespace adenet

#endif  // ADENET_NETWORK_MODEL_H_
