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

#include "train/adagrad.h"

#include <cmath>

#include "util/error.h"

namespace adenet {

Adagrad::Adagrad(const ParamStore& params, double learning_rate, double epsilon)
    : lr_(learning_rate), eps_(epsilon) {
  if (!(lr_ > 0.0) || !(eps_ > 0.0)) throw UsageError("Adagrad needs positive lr and epsilon");
  acc_.reserve(params.size());
  for (const auto& p : params) acc_.emplace_back(p.value.size(), 0.0);
}

void Adagrad::step(ParamStore& params, const Gradients& grads) {
  if (params.size() != acc_.size()) throw DimensionError("Adagrad: parameter count changed");
  auto update = [this](double& p, double& acc, double g) {
    acc += g * g;
    p -= lr_ * g / (std::sqrt(acc) + eps_);
  };
  for (ParamId id = 0; id < params.size() && id < grads.size(); ++id) {
    Parameter& param = params[id];
    if (!param.trainable) continue;
    const Gradients::Slot& slot = grads.slot(id);
    if (slot.empty()) continue;
    auto values = param.value.data();
    auto& acc = acc_[id];
    if (!slot.dense.empty()) {
      const std::vector<double> g = grads.to_dense(id, param.value);
      for (std::size_t i = 0; i < g.size(); ++i) update(values[i], acc[i], g[i]);
      continue;
    }
    const std::size_t width = param.value.rank() == 0 ? 1 : param.value.shape().back();
    for (const auto& [row, g] : slot.rows) {
      for (std::size_t i = 0; i < g.size(); ++i) {
        update(values[row * width + i], acc[row * width + i], g[i]);
      }
    }
  }
}

}  // namespace adenet
