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

#ifndef ADENET_EVAL_METRICS_H_
#define ADENET_EVAL_METRICS_H_

#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <tuple>
#include <vector>

#include <json.hpp>

namespace adenet {

struct Counts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  Counts& operator+=(const Counts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  bool operator==(const Counts&) const = default;
};

// Precision, recall and F1 on the percent scale. A zero denominator yields 0
// and sets the matching flag.
struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool precision_undefined = false;
  bool recall_undefined = false;
  Counts counts;

  nlohmann::ordered_json to_json() const;
};

Prf prf_from_counts(const Counts& c);
// 2PR/(P+R), 0 when P+R == 0.
double f1_score(double precision, double recall);

// Token-level micro counts. A token is a true positive when pred == gold and
// gold is positive; a false positive when pred is positive and differs from
// gold; a false negative when gold is positive and pred differs.
Counts token_counts(std::span<const std::size_t> gold, std::span<const std::size_t> pred,
                    const std::set<std::size_t>& positive);
Prf token_prf(std::span<const std::size_t> gold, std::span<const std::size_t> pred,
              const std::set<std::size_t>& positive);

// Entity-label positives (every tag but O) and the ADE positive class.
const std::set<std::size_t>& entity_positive_set();
const std::set<std::size_t>& ade_positive_set();

// [begin, end, type) spans. For BIO ids type is 1 (Drug) or 2 (Disease); a
// stray I- tag opens a span. For binary flags runs of 1 form spans of type 1.
using Span = std::tuple<std::size_t, std::size_t, int>;
std::vector<Span> bio_spans(std::span<const std::size_t> labels);
std::vector<Span> flag_spans(std::span<const std::size_t> flags);
// Exact-match span counts.
Counts span_counts(const std::vector<Span>& gold, const std::vector<Span>& pred);

// Pearson correlation; empty when either series has zero variance or fewer
// than two points.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

// Counts over ten F1 bins [0,10), [10,20), ..., [90,100]; 100 lands in the
// last bin.
std::array<std::size_t, 10> decile_histogram(std::span<const double> values);

}  // namespace adenet

#endif  // ADENET_EVAL_METRICS_H_
