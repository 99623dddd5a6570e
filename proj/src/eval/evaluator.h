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

#ifndef ADENET_EVAL_EVALUATOR_H_
#define ADENET_EVAL_EVALUATOR_H_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "data/sample.h"
#include "eval/metrics.h"
#include "network/model.h"

namespace adenet {

struct SampleScore {
  std::string id;
  double er_f1 = 0.0;
  double ade_f1 = 0.0;
};

struct EvalReport {
  std::size_t samples = 0;
  std::size_t tokens = 0;
  Prf er;
  Prf ade;
  Prf er_span;
  Prf ade_span;
  std::vector<SampleScore> per_sample;
  std::array<std::size_t, 10> er_histogram{};
  std::array<std::size_t, 10> ade_histogram{};
  std::optional<double> pearson_r;  // empty when undefined

  double selection_score() const { return 0.5 * (er.f1 + ade.f1); }
  nlohmann::ordered_json to_json() const;
};

// Scores predictions against gold labels; pure function of its inputs.
EvalReport score(const std::vector<Sample>& gold, const std::vector<ForwardTrace>& traces);

// Inference on every sample (up to `workers` threads; results are gathered
// in input order), then score().
std::vector<ForwardTrace> predict_all(const Model& model, const std::vector<Sample>& samples,
                                      std::size_t workers = 1);
EvalReport evaluate(const Model& model, const std::vector<Sample>& samples,
                    std::size_t workers = 1);

// Copy of the sample with predicted entity tags and ADE flags.
Sample apply_prediction(const Sample& sample, const ForwardTrace& trace);

// Attention matrix export. The CSV has a header row (empty corner cell, then
// the tokens) followed by one row per token: the token, then its T weights.
std::string attention_csv(const std::vector<std::string>& tokens, const Tensor& attention);
// Binary P6 pixmap; each weight becomes a cell_px square, white at 0 and
// dark blue at 1, rows in sequence order.
std::string attention_ppm(const Tensor& attention, std::size_t cell_px = 12);

}  // namespace adenet

#endif  // ADENET_EVAL_EVALUATOR_H_
