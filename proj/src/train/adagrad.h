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

#ifndef ADENET_TRAIN_ADAGRAD_H_
#define ADENET_TRAIN_ADAGRAD_H_

#include <vector>

#include "autodiff/params.h"

namespace adenet {

// acc += g * g;  p -= lr * g / (sqrt(acc) + eps), elementwise. Frozen
// parameters are skipped. Row-sparse gradient slots only touch their rows.
class Adagrad {
 public:
  Adagrad(const ParamStore& params, double learning_rate, double epsilon = 1e-8);

  void step(ParamStore& params, const Gradients& grads);

  const std::vector<double>& accumulator(ParamId id) const { return acc_.at(id); }
  double learning_rate() const { return lr_; }
  double epsilon() const { return eps_; }

 private:
  double lr_;
  double eps_;
  std::vector<std::vector<double>> acc_;
};

}  // namespace adenet

#endif  // ADENET_TRAIN_ADAGRAD_H_
