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

#include "eval/metrics.h"

#include <algorithm>
#include <cmath>

#include "data/sample.h"
#include "util/error.h"

namespace adenet {

nlohmann::ordered_json Prf::to_json() const {
  nlohmann::ordered_json j;
  j["p"] = precision;
  j["r"] = recall;
  j["f1"] = f1;
  j["tp"] = counts.tp;
  j["fp"] = counts.fp;
  j["fn"] = counts.fn;
  if (precision_undefined) j["p_undefined"] = true;
  if (recall_undefined) j["r_undefined"] = true;
  return j;
}

double f1_score(double precision, double recall) {
  const double s = precision + recall;
  return s > 0.0 ? 2.0 * precision * recall / s : 0.0;
}

Prf prf_from_counts(const Counts& c) {
  Prf out;
  out.counts = c;
  if (c.tp + c.fp == 0) {
    out.precision_undefined = true;
  } else {
    out.precision = 100.0 * static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
  }
  if (c.tp + c.fn == 0) {
    out.recall_undefined = true;
  } else {
    out.recall = 100.0 * static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  }
  out.f1 = f1_score(out.precision, out.recall);
  return out;
}

Counts token_counts(std::span<const std::size_t> gold, std::span<const std::size_t> pred,
                    const std::set<std::size_t>& positive) {
  if (gold.size() != pred.size()) {
    throw DimensionError("token_prf: gold has " + std::to_string(gold.size()) +
                         " labels, prediction has " + std::to_string(pred.size()));
  }
  Counts c;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const bool g = positive.count(gold[i]) > 0;
    const bool p = positive.count(pred[i]) > 0;
    if (g && pred[i] == gold[i]) {
      ++c.tp;
      continue;
    }
    if (p) ++c.fp;
    if (g) ++c.fn;
  }
  return c;
}

Prf token_prf(std::span<const std::size_t> gold, std::span<const std::size_t> pred,
              const std::set<std::size_t>& positive) {
  return prf_from_counts(token_counts(gold, pred, positive));
}

const std::set<std::size_t>& entity_positive_set() {
  static const std::set<std::size_t> s = {1, 2, 3, 4};
  return s;
}

const std::set<std::size_t>& ade_positive_set() {
  static const std::set<std::size_t> s = {1};
  return s;
}

std::vector<Span> bio_spans(std::span<const std::size_t> labels) {
  std::vector<Span> spans;
  auto type_of = [](std::size_t id) { return is_drug_label(id) ? 1 : is_disease_label(id) ? 2 : 0; };
  std::size_t i = 0;
  while (i < labels.size()) {
    const int type = type_of(labels[i]);
    if (type == 0) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    // Continue through I- tags of the same type (ids 2 and 4).
    while (j < labels.size() && type_of(labels[j]) == type && labels[j] % 2 == 0) ++j;
    spans.emplace_back(i, j, type);
    i = j;
  }
  return spans;
}

std::vector<Span> flag_spans(std::span<const std::size_t> flags) {
  std::vector<Span> spans;
  std::size_t i = 0;
  while (i < flags.size()) {
    if (flags[i] != 1) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < flags.size() && flags[j] == 1) ++j;
    spans.emplace_back(i, j, 1);
    i = j;
  }
  return spans;
}

Counts span_counts(const std::vector<Span>& gold, const std::vector<Span>& pred) {
  const std::set<Span> g(gold.begin(), gold.end());
  const std::set<Span> p(pred.begin(), pred.end());
  Counts c;
  for (const auto& s : p) {
    if (g.count(s)) {
      ++c.tp;
    } else {
      ++c.fp;
    }
  }
  c.fn = g.size() - c.tp;
  return c;
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionError("pearson: series lengths differ");
  const std::size_t n = x.size();
  if (n < 2) return std::nullopt;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::array<std::size_t, 10> decile_histogram(std::span<const double> values) {
  std::array<std::size_t, 10> bins{};
  for (double v : values) {
    const double b = std::floor(std::clamp(v, 0.0, 100.0) / 10.0);
    ++bins[std::min<std::size_t>(9, static_cast<std::size_t>(b))];
  }
  return bins;
}

}  // namespace adenet
