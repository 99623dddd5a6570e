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

#ifndef ADENET_CHECK_GRADSUITE_H_
#define ADENET_CHECK_GRADSUITE_H_

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "network/model.h"

namespace adenet {

struct GradRow {
  std::string name;
  double max_rel_error = 0.0;
  double tolerance = 0.0;
  std::size_t coordinates = 0;
  bool pass() const { return max_rel_error < tolerance; }
};

struct GradSuiteReport {
  std::vector<GradRow> ops;
  GradRow end_to_end;
  double seconds = 0.0;
  // Inference traces of the tiny model (with padding), kept for attention
  // checks.
  std::vector<ForwardTrace> traces;

  bool pass() const;
  nlohmann::ordered_json to_json() const;
  std::string table() const;
};

inline constexpr double kOpTolerance = 1e-4;
inline constexpr double kEndToEndTolerance = 1e-3;

// Hidden 4; word/char/PoS/label embeddings 3/5/2/2; char widths {1, 2}.
ModelConfig tiny_model_config();

// Checks every primitive op (and the LSTM cell and attention step as
// composites) against central differences, then the full model loss with
// respect to `sampled` parameter coordinates spread over all trainable
// tensors. Deterministic in `seed`.
GradSuiteReport run_gradient_suite(std::uint64_t seed = 7, std::size_t sampled = 20);

}  // namespace adenet

#endif  // ADENET_CHECK_GRADSUITE_H_
