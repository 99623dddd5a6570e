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

#include <cmath>
#include <filesystem>

#include <doctest.h>

#include "check/gradsuite.h"
#include "data/fixture.h"
#include "network/checkpoint.h"
#include "network/model.h"
#include "util/error.h"
#include "util/io.h"

namespace adenet {
namespace {

std::string temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "adenet_unit" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

std::unique_ptr<Model> tiny_model(std::uint64_t seed = 3, bool attention = true) {
  ModelConfig c = tiny_model_config();
  c.use_attention = attention;
  auto m = std::make_unique<Model>(c, Vocab::build(make_fixture().train));
  m->init_uniform(0.5, seed);
  return m;
}

void check_attention(const ForwardTrace& tr, std::size_t T) {
  REQUIRE(tr.attention.dim(0) == T);
  for (std::size_t t = 0; t < T; ++t) {
    double total = 0.0;
    for (std::size_t p = 0; p < tr.attention.dim(1); ++p) {
      if (p >= T) CHECK(tr.attention.at(t, p) == 0.0);
      total += tr.attention.at(t, p);
    }
    CHECK(std::abs(total - 1.0) < 1e-9);
  }
}

}  // namespace

TEST_SUITE("network") {

TEST_CASE("default configuration has the reference widths") {
  ModelConfig c;
  CHECK(c.embedding.feature_dim() == 950);
  CHECK(c.state_dim() == 300);
  CHECK(c.entity_repr_dim() == 625);
  CHECK(c.ade_repr_dim() == 625);
  Model m(c, Vocab::build(make_fixture().train));
  const auto& p = m.params();
  CHECK(p[m.lstm_forward().w].value.shape() == Shape{600, 950});
  CHECK(p[m.lstm_backward().u].value.shape() == Shape{600, 150});
  CHECK(p[m.attention_weight()].value.shape() == Shape{300, 300});
  CHECK(p[m.entity_weight()].value.shape() == Shape{5, 625});
  CHECK(p[m.combine_weight()].value.shape() == Shape{300, 625});
  CHECK(p[m.ade_weight()].value.shape() == Shape{2, 625});
}

TEST_CASE("config JSON round trip") {
  ModelConfig c = tiny_model_config();
  c.drug_full_features = false;
  c.teacher_forcing = true;
  const ModelConfig d = ModelConfig::from_json(c.to_json());
  CHECK(d.to_json() == c.to_json());
}

TEST_CASE("init is uniform within range and seeded") {
  auto a = tiny_model(5);
  auto b = tiny_model(5);
  auto c = tiny_model(6);
  CHECK(encode_blob(a->params()) == encode_blob(b->params()));
  CHECK(encode_blob(a->params()) != encode_blob(c->params()));
  for (const auto& p : a->params()) {
    for (double v : p.value.data()) CHECK(std::abs(v) < 0.5);
  }
}

TEST_CASE("attention rows are distributions and padding gets zero weight") {
  auto m = tiny_model();
  for (const auto& s : make_fixture(6, 0).train) {
    const auto enc = m->encode_sample(s);
    const auto tr = m->predict(enc, {.pad_to = s.size() + 4});
    CHECK(tr.attention.dim(1) == s.size() + 4);
    check_attention(tr, s.size());
    CHECK(tr.predicted_labels.size() == s.size());
    CHECK(tr.entity_dists.shape() == Shape{s.size(), 5});
    CHECK(tr.ade_dists.shape() == Shape{s.size(), 2});
  }
}

TEST_CASE("without attention the trace row is one-hot on the current token") {
  auto m = tiny_model(3, false);
  const Sample s = make_fixture(1, 0).train[0];
  const auto tr = m->predict(m->encode_sample(s));
  for (std::size_t t = 0; t < s.size(); ++t) {
    for (std::size_t p = 0; p < s.size(); ++p) CHECK(tr.attention.at(t, p) == (p == t ? 1.0 : 0.0));
  }
}

TEST_CASE("inference loss is the mean token cross entropy of the trace") {
  auto m = tiny_model();
  const Sample s = make_fixture(1, 0).train[0];
  const auto enc = m->encode_sample(s);
  Tape tape(&m->params());
  const auto r = m->forward(tape, enc, ForwardMode::kInference, nullptr);
  double total = 0.0;
  for (std::size_t t = 0; t < s.size(); ++t) {
    total -= std::log(r.trace.entity_dists.at(t, enc.entity[t]));
    total -= std::log(r.trace.ade_dists.at(t, static_cast<std::size_t>(enc.ade[t])));
  }
  CHECK(r.loss.value().item() == doctest::Approx(total / s.size()).epsilon(1e-12));
}

TEST_CASE("teacher forcing and free running agree at the first step") {
  auto m = tiny_model();
  const Sample s = make_fixture(1, 0).train[0];
  const auto enc = m->encode_sample(s);
  Tape t1(&m->params()), t2(&m->params());
  Rng r1(4), r2(4);
  const auto a = m->forward(t1, enc, ForwardMode::kTeacherForced, &r1);
  const auto b = m->forward(t2, enc, ForwardMode::kFreeRunning, &r2);
  for (std::size_t k = 0; k < 5; ++k) CHECK(a.trace.entity_dists.at(0, k) == b.trace.entity_dists.at(0, k));
}

TEST_CASE("predict is deterministic") {
  auto m = tiny_model();
  const Sample s = make_fixture(1, 0).train[0];
  const auto enc = m->encode_sample(s);
  const auto a = m->predict(enc);
  const auto b = m->predict(enc);
  CHECK(std::equal(a.entity_dists.data().begin(), a.entity_dists.data().end(),
                   b.entity_dists.data().begin()));
  CHECK(a.predicted_ade == b.predicted_ade);
}

TEST_CASE("checkpoint round trip is byte identical") {
  auto m = tiny_model();
  const std::string d1 = temp_dir("ckpt1"), d2 = temp_dir("ckpt2");
  save_checkpoint(*m, d1);
  auto loaded = load_checkpoint(d1);
  save_checkpoint(*loaded, d2);
  CHECK(read_file(d1 + "/model.json") == read_file(d2 + "/model.json"));
  CHECK(read_file(d1 + "/model.bin") == read_file(d2 + "/model.bin"));
  const Sample s = make_fixture(1, 0).train[0];
  const auto a = m->predict(m->encode_sample(s));
  const auto b = loaded->predict(loaded->encode_sample(s));
  CHECK(std::equal(a.ade_dists.data().begin(), a.ade_dists.data().end(), b.ade_dists.data().begin()));
}

TEST_CASE("checkpoint rejects shape, vocabulary and blob mismatches") {
  auto m = tiny_model();
  const std::string dir = temp_dir("ckpt_mismatch");
  save_checkpoint(*m, dir);

  ModelConfig wider = tiny_model_config();
  wider.hidden = 5;
  Model other(wider, m->vocab());
  CHECK_THROWS_AS(load_checkpoint_into(other, dir), DataError);

  Model other_vocab(tiny_model_config(), Vocab::build(make_fixture(4, 0, 99).train));
  CHECK_THROWS_AS(load_checkpoint_into(other_vocab, dir), DataError);

  std::string blob = read_file(dir + "/model.bin");
  blob.pop_back();
  write_file(dir + "/model.bin", blob);
  CHECK_THROWS_AS(load_checkpoint(dir), DataError);
  CHECK_THROWS_AS(load_checkpoint(temp_dir("ckpt_empty")), DataError);
}

TEST_CASE("blob is little-endian doubles") {
  ParamStore p;
  p.add("x", {2});
  p[0].value[0] = 1.0;
  p[0].value[1] = -2.0;
  const std::string blob = encode_blob(p);
  REQUIRE(blob.size() == 16);
  // 1.0 = 0x3ff0000000000000
  CHECK(static_cast<unsigned char>(blob[7]) == 0x3f);
  CHECK(static_cast<unsigned char>(blob[6]) == 0xf0);
  CHECK(static_cast<unsigned char>(blob[15]) == 0xc0);
  ParamStore q;
  q.add("x", {2});
  decode_blob(blob, q);
  CHECK(q[0].value[1] == -2.0);
}

}  // TEST_SUITE

}  // namespace adenet
