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
#include <sstream>

#include <doctest.h>

#include "eval/evaluator.h"
#include "eval/metrics.h"
#include "util/error.h"
#include "util/rng.h"

namespace adenet {
namespace {

using Ids = std::vector<std::size_t>;

// Per-class enumeration, summed; independent of the single-pass counter.
Counts brute_force_counts(const Ids& gold, const Ids& pred, const std::set<std::size_t>& positive) {
  Counts c;
  for (std::size_t cls : positive) {
    for (std::size_t i = 0; i < gold.size(); ++i) {
      if (gold[i] == cls && pred[i] == cls) ++c.tp;
      if (pred[i] == cls && gold[i] != cls) ++c.fp;
      if (gold[i] == cls && pred[i] != cls) ++c.fn;
    }
  }
  return c;
}

Sample gold_sample(const std::string& id) {
  Sample s;
  s.id = id;
  s.sentence_id = id;
  s.tokens = {"lithium", "caused", "rash", "."};
  s.pos = {"NN", "VBD", "NN", "."};
  s.entity_labels = {"B-Drug", "O", "B-Disease", "O"};
  s.drug_begin = 0;
  s.drug_end = 1;
  s.drug_text = "lithium";
  s.ade_labels = {0, 0, 1, 0};
  return s;
}

ForwardTrace trace_of(Ids labels, std::vector<int> ade) {
  ForwardTrace t;
  t.predicted_labels = std::move(labels);
  t.predicted_ade = std::move(ade);
  return t;
}

std::vector<std::string> csv_fields(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("eval") {

TEST_CASE("token PRF on a worked example") {
  // gold: B-Drug O B-Dis I-Dis O ; pred: B-Drug B-Dis B-Dis O O
  const Ids gold = {1, 0, 3, 4, 0};
  const Ids pred = {1, 3, 3, 0, 0};
  const Prf p = token_prf(gold, pred, entity_positive_set());
  CHECK(p.counts == Counts{2, 1, 1});
  CHECK(p.precision == doctest::Approx(200.0 / 3));
  CHECK(p.recall == doctest::Approx(200.0 / 3));
  CHECK(p.f1 == doctest::Approx(200.0 / 3));
}

TEST_CASE("undefined precision and recall are flagged and scored zero") {
  const Ids zeros = {0, 0, 0};
  const Prf none = token_prf(zeros, zeros, ade_positive_set());
  CHECK(none.precision_undefined);
  CHECK(none.recall_undefined);
  CHECK(none.f1 == 0.0);
  const Prf missed = token_prf(Ids{1, 0}, Ids{0, 0}, ade_positive_set());
  CHECK(missed.precision_undefined);
  CHECK(!missed.recall_undefined);
  CHECK(missed.recall == 0.0);
}

TEST_CASE("token PRF agrees with a brute-force count on random cases") {
  Rng rng(2026);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng.below(40);
    const bool binary = rng.bernoulli(0.5);
    const std::size_t classes = binary ? 2 : 5;
    Ids gold(n), pred(n);
    for (std::size_t i = 0; i < n; ++i) {
      gold[i] = rng.below(classes);
      pred[i] = rng.below(classes);
    }
    const auto& positive = binary ? ade_positive_set() : entity_positive_set();
    const Counts expect = brute_force_counts(gold, pred, positive);
    const Prf got = token_prf(gold, pred, positive);
    CHECK(got.counts == expect);
    const double p = expect.tp + expect.fp ? 100.0 * expect.tp / (expect.tp + expect.fp) : 0.0;
    const double r = expect.tp + expect.fn ? 100.0 * expect.tp / (expect.tp + expect.fn) : 0.0;
    CHECK(got.precision == doctest::Approx(p).epsilon(1e-12));
    CHECK(got.recall == doctest::Approx(r).epsilon(1e-12));
    CHECK(got.f1 == doctest::Approx(p + r > 0 ? 2 * p * r / (p + r) : 0.0).epsilon(1e-12));
  }
}

TEST_CASE("property: relabeling positive classes leaves PRF unchanged") {
  Rng rng(8);
  const std::vector<std::size_t> perm = {0, 3, 4, 1, 2};
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.below(30);
    Ids gold(n), pred(n), g2(n), p2(n);
    for (std::size_t i = 0; i < n; ++i) {
      gold[i] = rng.below(5);
      pred[i] = rng.below(5);
      g2[i] = perm[gold[i]];
      p2[i] = perm[pred[i]];
    }
    CHECK(token_counts(gold, pred, entity_positive_set()) ==
          token_counts(g2, p2, entity_positive_set()));
  }
}

TEST_CASE("F1 from precision and recall pairs") {
  CHECK(std::abs(f1_score(88.41, 82.41) - 85.30) < 0.01);
  CHECK(std::abs(f1_score(86.28, 87.29) - 86.78) < 0.01);
  CHECK(f1_score(0.0, 0.0) == 0.0);
}

TEST_CASE("spans from BIO tags and flags") {
  const Ids tags = {1, 2, 0, 3, 4, 4, 0, 2};
  const auto spans = bio_spans(tags);
  REQUIRE(spans.size() == 3);
  CHECK(spans[0] == Span{0, 2, 1});
  CHECK(spans[1] == Span{3, 6, 2});
  CHECK(spans[2] == Span{7, 8, 1});
  CHECK(bio_spans(Ids{3, 3}).size() == 2);
  CHECK(bio_spans(Ids{1, 4}).size() == 2);
  const auto f = flag_spans(Ids{1, 1, 0, 1});
  CHECK(f == std::vector<Span>{{0, 2, 1}, {3, 4, 1}});
  const Counts c = span_counts(spans, {{0, 2, 1}, {3, 5, 2}});
  CHECK(c == Counts{1, 1, 2});
}

TEST_CASE("pearson and histogram") {
  const std::vector<double> flat = {50, 50, 50};
  const std::vector<double> up = {1, 2, 3};
  CHECK(!pearson(flat, up).has_value());
  CHECK(!pearson(std::vector<double>{1}, std::vector<double>{2}).has_value());
  CHECK(*pearson(up, std::vector<double>{2, 4, 6}) == doctest::Approx(1.0));
  CHECK(*pearson(up, std::vector<double>{3, 2, 1}) == doctest::Approx(-1.0));
  const auto h = decile_histogram(std::vector<double>{0, 9.99, 10, 55, 99.9, 100});
  CHECK(h[0] == 2);
  CHECK(h[1] == 1);
  CHECK(h[5] == 1);
  CHECK(h[9] == 2);
  std::size_t total = 0;
  for (auto v : h) total += v;
  CHECK(total == 6);
}

TEST_CASE("scoring a hand-built set") {
  const std::vector<Sample> gold = {gold_sample("a"), gold_sample("b"), gold_sample("c")};
  const std::vector<ForwardTrace> traces = {trace_of({1, 0, 3, 0}, {0, 0, 1, 0}),
                                            trace_of({1, 0, 0, 0}, {0, 0, 0, 0}),
                                            trace_of({1, 0, 3, 3}, {0, 0, 1, 1})};
  const EvalReport r = score(gold, traces);
  CHECK(r.samples == 3);
  CHECK(r.tokens == 12);
  CHECK(r.er.counts == Counts{5, 1, 1});
  CHECK(r.er.f1 == doctest::Approx(500.0 / 6));
  CHECK(r.ade.counts == Counts{2, 1, 1});
  CHECK(r.ade.f1 == doctest::Approx(200.0 / 3));
  CHECK(r.per_sample[0].er_f1 == 100.0);
  CHECK(r.per_sample[1].er_f1 == doctest::Approx(200.0 / 3));
  CHECK(r.per_sample[1].ade_f1 == 0.0);
  CHECK(r.per_sample[2].er_f1 == doctest::Approx(80.0));
  CHECK(r.per_sample[2].ade_f1 == doctest::Approx(200.0 / 3));
  CHECK(r.er_histogram[9] == 1);
  CHECK(r.er_histogram[6] == 1);
  CHECK(r.er_histogram[8] == 1);
  CHECK(r.ade_histogram[0] == 1);
  REQUIRE(r.pearson_r.has_value());
  CHECK(*r.pearson_r == doctest::Approx(0.9538209664765319).epsilon(1e-12));
  CHECK(r.er_span.counts == Counts{5, 1, 1});
  CHECK(r.selection_score() == doctest::Approx(0.5 * (500.0 / 6 + 200.0 / 3)));
  const auto j = r.to_json();
  CHECK(j.contains("per_sample"));
  CHECK_THROWS_AS(score(gold, {traces[0]}), DimensionError);
}

TEST_CASE("applying a prediction copies tags and flags") {
  const Sample s = apply_prediction(gold_sample("a"), trace_of({1, 0, 0, 3}, {0, 0, 0, 1}));
  CHECK(s.entity_labels == std::vector<std::string>{"B-Drug", "O", "O", "B-Disease"});
  CHECK(s.ade_labels == std::vector<int>{0, 0, 0, 1});
}

TEST_CASE("attention CSV round trips shape and row sums") {
  const std::vector<std::string> tokens = {"a", "b,c", "say \"hi\""};
  Tensor att(Shape{3, 3});
  const double w[3][3] = {{0.2, 0.3, 0.5}, {1.0 / 3, 1.0 / 3, 1.0 / 3}, {0.1, 0.0, 0.9}};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) att.at(r, c) = w[r][c];
  }
  std::istringstream in(attention_csv(tokens, att));
  std::vector<std::vector<std::string>> rows;
  for (std::string line; std::getline(in, line);) rows.push_back(csv_fields(line));
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == std::vector<std::string>{"", "a", "b,c", "say \"hi\""});
  for (int r = 1; r <= 3; ++r) {
    REQUIRE(rows[r].size() == 4);
    CHECK(rows[r][0] == tokens[r - 1]);
    double total = 0.0;
    for (int c = 1; c <= 3; ++c) {
      const double v = std::stod(rows[r][c]);
      CHECK(v == w[r - 1][c - 1]);
      total += v;
    }
    CHECK(std::abs(total - 1.0) < 1e-12);
  }
}

TEST_CASE("attention PPM header and colors") {
  Tensor att(Shape{1, 2});
  att.at(0, 0) = 0.0;
  att.at(0, 1) = 1.0;
  const std::string img = attention_ppm(att, 2);
  const std::string header = "P6\n4 2\n255\n";
  REQUIRE(img.size() == header.size() + 4 * 2 * 3);
  CHECK(img.substr(0, header.size()) == header);
  CHECK(static_cast<unsigned char>(img[header.size()]) == 255);
  CHECK(static_cast<unsigned char>(img[header.size() + 6]) == 8);
  CHECK(static_cast<unsigned char>(img[header.size() + 8]) == 107);
}

}  // TEST_SUITE

}  // namespace adenet
