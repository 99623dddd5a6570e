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

#include "network/model.h"

#include <algorithm>

#include "util/error.h"

namespace adenet {

nlohmann::ordered_json ModelConfig::to_json() const {
  nlohmann::ordered_json j;
  j["word_dim"] = embedding.word_dim;
  j["char_dim"] = embedding.char_dim;
  j["char_widths"] = embedding.char_widths;
  j["char_filters_per_width"] = embedding.char_filters_per_width;
  j["pos_dim"] = embedding.pos_dim;
  j["label_dim"] = embedding.label_dim;
  j["char"] = embedding.use_char;
  j["pos"] = embedding.use_pos;
  j["hidden"] = hidden;
  j["combine_dim"] = combine_dim;
  j["attention"] = use_attention;
  j["drug_features"] = drug_full_features ? "full" : "word";
  j["dropout"] = dropout;
  j["teacher_forcing"] = teacher_forcing;
  j["ade_weight"] = ade_weight;
  return j;
}

ModelConfig ModelConfig::from_json(const nlohmann::json& j) {
  ModelConfig c;
  try {
    c.embedding.word_dim = j.at("word_dim").get<std::size_t>();
    c.embedding.char_dim = j.at("char_dim").get<std::size_t>();
    c.embedding.char_widths = j.at("char_widths").get<std::vector<std::size_t>>();
    c.embedding.char_filters_per_width = j.at("char_filters_per_width").get<std::size_t>();
    c.embedding.pos_dim = j.at("pos_dim").get<std::size_t>();
    c.embedding.label_dim = j.at("label_dim").get<std::size_t>();
    c.embedding.use_char = j.at("char").get<bool>();
    c.embedding.use_pos = j.at("pos").get<bool>();
    c.hidden = j.at("hidden").get<std::size_t>();
    c.combine_dim = j.at("combine_dim").get<std::size_t>();
    c.use_attention = j.at("attention").get<bool>();
    c.drug_full_features = j.at("drug_features").get<std::string>() == "full";
    c.dropout = j.at("dropout").get<double>();
    c.teacher_forcing = j.at("teacher_forcing").get<bool>();
    c.ade_weight = j.at("ade_weight").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed model configuration: ") + e.what());
  }
  return c;
}

std::size_t argmax(std::span<const double> values) {
  return static_cast<std::size_t>(std::max_element(values.begin(), values.end()) -
                                  values.begin());
}

Model::Model(ModelConfig config, Vocab vocab)
    : config_(std::move(config)), vocab_(std::move(vocab)) {
  if (config_.hidden == 0 || config_.combine_dim == 0) {
    throw UsageError("hidden and combine_dim must be positive");
  }
  if (config_.dropout < 0.0 || config_.dropout >= 1.0) {
    throw UsageError("dropout must lie in [0, 1)");
  }
  embeddings_ = EmbeddingStack(config_.embedding, vocab_, params_);
  const std::size_t h = config_.hidden;
  const std::size_t d_in = config_.embedding.feature_dim();
  auto add_lstm = [&](const std::string& prefix) {
    LstmParams p;
    p.w = params_.add(prefix + "_W", {4 * h, d_in});
    p.u = params_.add(prefix + "_U", {4 * h, h});
    p.b = params_.add(prefix + "_b", {4 * h});
    return p;
  };
  lstm_fwd_ = add_lstm("lstm_fwd");
  lstm_bwd_ = add_lstm("lstm_bwd");
  const std::size_t state = config_.state_dim();
  w_att_ = params_.add("attention_W", {state, state});
  // Head weights are stored [out x in].
  w_ent_ = params_.add("entity_W", {kNumEntityLabels, config_.entity_repr_dim()});
  b_ent_ = params_.add("entity_b", {kNumEntityLabels});
  w_c_ = params_.add("combine_W", {config_.combine_dim, config_.entity_repr_dim()});
  b_c_ = params_.add("combine_b", {config_.combine_dim});
  w_ade_ = params_.add("ade_W", {2, config_.ade_repr_dim()});
  b_ade_ = params_.add("ade_b", {2});
}

void Model::init_uniform(double range, std::uint64_t seed) {
  if (!(range > 0.0)) throw UsageError("init range must be positive");
  Rng rng(seed);
  for (auto& p : params_) {
    for (double& v : p.value.data()) v = rng.uniform(-range, range);
  }
}

EncodedSample Model::encode_sample(const Sample& sample) const {
  EncodedSample e;
  for (std::size_t t = 0; t < sample.size(); ++t) {
    e.tokens.push_back(token_ids(vocab_, sample.tokens[t], sample.pos[t]));
    e.entity.push_back(entity_label_id(sample.entity_labels[t]));
  }
  e.drug_begin = sample.drug_begin;
  e.drug_end = sample.drug_end;
  e.ade = sample.ade_labels;
  return e;
}

LstmState Model::lstm_cell(Tape& tape, const LstmParams& p, Var x,
                           const LstmState& prev) const {
  const std::size_t h = config_.hidden;
  Var z = ad::add(ad::add(ad::matvec(tape.param(p.w), x), ad::matvec(tape.param(p.u), prev.h)),
                  tape.param(p.b));
  Var in_gate = ad::sigmoid(ad::slice(z, 0, h));
  Var forget_gate = ad::sigmoid(ad::slice(z, h, h));
  Var cell_input = ad::tanh(ad::slice(z, 2 * h, h));
  Var out_gate = ad::sigmoid(ad::slice(z, 3 * h, h));
  Var c = ad::add(ad::mul(forget_gate, prev.c), ad::mul(in_gate, cell_input));
  Var hidden = ad::mul(out_gate, ad::tanh(c));
  return {hidden, c};
}

namespace {

Rng& require_rng(Rng* rng) {
  if (rng == nullptr) throw UsageError("training-mode forward pass needs a generator");
  return *rng;
}

}  // namespace

EncodedSequence Model::encode(Tape& tape, const std::vector<Var>& features, bool training,
                              Rng* rng, std::size_t pad_to) const {
  const std::size_t n = features.size();
  if (n == 0) throw DataError("cannot encode an empty sequence");
  const bool drop = training && config_.dropout > 0.0;
  std::vector<Var> inputs = features;
  if (drop) {
    for (auto& x : inputs) x = ad::dropout(x, config_.dropout, true, require_rng(rng));
  }
  const std::size_t h = config_.hidden;
  const LstmState zero{tape.constant(Tensor(Shape{h})), tape.constant(Tensor(Shape{h}))};

  EncodedSequence enc;
  enc.forward.resize(n);
  enc.backward.resize(n);
  LstmState s = zero;
  for (std::size_t t = 0; t < n; ++t) {
    s = lstm_cell(tape, lstm_fwd_, inputs[t], s);
    enc.forward[t] = s.h;
  }
  s = zero;
  for (std::size_t t = n; t-- > 0;) {
    s = lstm_cell(tape, lstm_bwd_, inputs[t], s);
    enc.backward[t] = s.h;
  }
  const std::size_t total = std::max(n, pad_to);
  enc.states.reserve(total);
  for (std::size_t t = 0; t < n; ++t) {
    Var state = ad::concat({enc.forward[t], enc.backward[t]});
    if (drop) state = ad::dropout(state, config_.dropout, true, require_rng(rng));
    enc.states.push_back(state);
  }
  enc.mask.assign(total, 0);
  std::fill(enc.mask.begin(), enc.mask.begin() + static_cast<std::ptrdiff_t>(n), 1);
  if (total > n) {
    Var pad = tape.constant(Tensor(Shape{config_.state_dim()}));
    while (enc.states.size() < total) enc.states.push_back(pad);
  }
  enc.matrix = ad::stack(enc.states);
  return enc;
}

Var Model::encode_drug(Tape& tape, const std::vector<Var>& features, bool training,
                       Rng* rng) const {
  if (features.empty()) throw DataError("drug query has no tokens");
  const bool drop = training && config_.dropout > 0.0;
  std::vector<Var> inputs = features;
  if (drop) {
    for (auto& x : inputs) x = ad::dropout(x, config_.dropout, true, require_rng(rng));
  }
  const std::size_t h = config_.hidden;
  const LstmState zero{tape.constant(Tensor(Shape{h})), tape.constant(Tensor(Shape{h}))};
  LstmState fwd = zero;
  for (const Var& x : inputs) fwd = lstm_cell(tape, lstm_fwd_, x, fwd);
  LstmState bwd = zero;
  for (std::size_t t = inputs.size(); t-- > 0;) bwd = lstm_cell(tape, lstm_bwd_, inputs[t], bwd);
  Var out = ad::concat({fwd.h, bwd.h});
  if (drop) out = ad::dropout(out, config_.dropout, true, require_rng(rng));
  return out;
}

AttentionStep Model::attend(Tape& tape, const EncodedSequence& enc, std::size_t t) const {
  // score_j = h_t^T W_a h_j, computed as H (W_a^T h_t).
  Var query = ad::matvec_t(tape.param(w_att_), enc.states.at(t));
  Var scores = ad::matvec(enc.matrix, query);
  Var weights = ad::softmax(scores, enc.mask);
  Var context = ad::matvec_t(enc.matrix, weights);
  return {context, weights};
}

EntityStep Model::entity_step(Tape& tape, const EncodedSequence& enc, std::size_t t,
                              std::size_t prev_label, Var context) const {
  Var repr = ad::concat({embeddings_.label_repr(tape, prev_label), context, enc.states.at(t)});
  Var logits = ad::tanh(ad::add(ad::matvec(tape.param(w_ent_), repr), tape.param(b_ent_)));
  return {ad::softmax(logits), repr};
}

Var Model::ade_step(Tape& tape, Var entity_repr, std::size_t label, Var drug) const {
  Var combined = ad::add(ad::matvec(tape.param(w_c_), entity_repr), tape.param(b_c_));
  Var repr = ad::concat({drug, combined, embeddings_.label_repr(tape, label)});
  return ad::softmax(ad::add(ad::matvec(tape.param(w_ade_), repr), tape.param(b_ade_)));
}

std::vector<Var> Model::drug_features(Tape& tape, const EncodedSample& s) const {
  if (s.drug_begin >= s.drug_end || s.drug_end > s.size()) {
    throw DataError("drug span out of range");
  }
  std::vector<Var> out;
  for (std::size_t t = s.drug_begin; t < s.drug_end; ++t) {
    if (config_.drug_full_features) {
      out.push_back(embeddings_.token_features(tape, s.tokens[t]));
    } else {
      const std::size_t rest =
          config_.embedding.feature_dim() - config_.embedding.word_repr_dim();
      Var word = embeddings_.word_repr(tape, s.tokens[t].word);
      out.push_back(rest == 0 ? word
                              : ad::concat({word, tape.constant(Tensor(Shape{rest}))}));
    }
  }
  return out;
}

ForwardResult Model::forward(Tape& tape, const EncodedSample& s, ForwardMode mode, Rng* rng,
                             const ForwardOptions& options) const {
  const std::size_t n = s.size();
  if (n == 0) throw DataError("cannot run the model on an empty sample");
  if (s.entity.size() != n || s.ade.size() != n) {
    throw DataError("sample label lengths differ from token count");
  }
  const bool training = mode != ForwardMode::kInference;
  const bool teacher = mode == ForwardMode::kTeacherForced;

  std::vector<Var> features;
  features.reserve(n);
  for (const auto& tok : s.tokens) features.push_back(embeddings_.token_features(tape, tok));
  const EncodedSequence enc = encode(tape, features, training, rng, options.pad_to);
  const Var drug = encode_drug(tape, drug_features(tape, s), training, rng);

  const std::size_t cols = enc.states.size();
  ForwardResult result;
  ForwardTrace& tr = result.trace;
  tr.entity_dists = Tensor(Shape{n, kNumEntityLabels});
  tr.ade_dists = Tensor(Shape{n, 2});
  tr.attention = Tensor(Shape{n, cols});
  tr.predicted_labels.resize(n);
  tr.predicted_ade.resize(n);

  std::vector<Var> losses;
  losses.reserve(2 * n);
  for (std::size_t t = 0; t < n; ++t) {
    Var context;
    if (config_.use_attention) {
      const AttentionStep a = attend(tape, enc, t);
      context = a.context;
      std::copy_n(&a.weights.value()[0], cols, &tr.attention.at(t, 0));
    } else {
      // Without the interaction layer the current state stands in for the
      // context vector; the trace records a one-hot row.
      context = enc.states[t];
      tr.attention.at(t, t) = 1.0;
    }
    const std::size_t prev = t == 0 ? kStartLabel
                             : teacher ? s.entity[t - 1]
                                       : tr.predicted_labels[t - 1];
    const EntityStep ent = entity_step(tape, enc, t, prev, context);
    const Tensor& ent_dist = ent.dist.value();
    tr.predicted_labels[t] = argmax(ent_dist.data());
    std::copy_n(&ent_dist[0], kNumEntityLabels, &tr.entity_dists.at(t, 0));

    // The label choice is discrete: no gradient flows through the argmax.
    const std::size_t label = teacher ? s.entity[t] : tr.predicted_labels[t];
    Var ade = ade_step(tape, ent.repr, label, drug);
    const Tensor& ade_dist = ade.value();
    tr.predicted_ade[t] = ade_dist[1] > ade_dist[0] ? 1 : 0;
    tr.ade_dists.at(t, 0) = ade_dist[0];
    tr.ade_dists.at(t, 1) = ade_dist[1];

    losses.push_back(ad::cross_entropy(ent.dist, s.entity[t]));
    Var ade_loss = ad::cross_entropy(ade, static_cast<std::size_t>(s.ade[t]));
    if (config_.ade_weight != 1.0) ade_loss = ad::scale(ade_loss, config_.ade_weight);
    losses.push_back(ade_loss);
  }
  result.loss = ad::scale(ad::add_n(losses), 1.0 / static_cast<double>(n));
  return result;
}

ForwardTrace Model::predict(const EncodedSample& sample, const ForwardOptions& options) const {
  Tape tape(&params_);
  return forward(tape, sample, ForwardMode::kInference, nullptr, options).trace;
}

}  // namespace adenet
