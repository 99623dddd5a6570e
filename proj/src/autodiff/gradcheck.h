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

#ifndef ADENET_AUTODIFF_GRADCHECK_H_
#define ADENET_AUTODIFF_GRADCHECK_H_

#include <functional>
#include <vector>

#include "autodiff/params.h"
#include "autodiff/tape.h"

namespace adenet {

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::vector<double> analytic;
  std::vector<double> numeric;
};

// |a - n| / max(|a|, |n|, 1e-8).
double relative_error(double analytic, double numeric);

// Compares the tape gradient of f at x against central differences
// (f(x + h e_i) - f(x - h e_i)) / 2h on every coordinate. f must build a
// scalar on the given tape from the given input and be deterministic. Tapes
// are bound to `params` so f may read model parameters.
using ScalarFn = std::function<Var(Tape&, Var)>;
GradCheckResult finite_diff_check(const ScalarFn& f, const Tensor& x, double h = 1e-5,
                                  const ParamStore* params = nullptr);

}  // namespace adenet

#endif  // ADENET_AUTODIFF_GRADCHECK_H_
