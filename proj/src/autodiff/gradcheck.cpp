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

#include "autodiff/gradcheck.h"

#include <algorithm>
#include <cmath>

namespace adenet {

double relative_error(double analytic, double numeric) {
  const double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-8});
  return std::abs(analytic - numeric) / denom;
}

namespace {

double evaluate(const ScalarFn& f, const Tensor& x, const ParamStore* params) {
  Tape tape(params);
  Var in = tape.input(x, false);
  return f(tape, in).value().item();
}

}  // namespace

GradCheckResult finite_diff_check(const ScalarFn& f, const Tensor& x, double h,
                                  const ParamStore* params) {
  GradCheckResult result;
  {
    Tape tape(params);
    Var in = tape.input(x, true);
    Var out = f(tape, in);
    tape.backward(out);
    auto g = tape.grad(in);
    result.analytic.assign(x.size(), 0.0);
    std::copy(g.begin(), g.end(), result.analytic.begin());
  }
  result.numeric.resize(x.size());
  Tensor probe = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double orig = probe[i];
    probe[i] = orig + h;
    const double up = evaluate(f, probe, params);
    probe[i] = orig - h;
    const double down = evaluate(f, probe, params);
    probe[i] = orig;
    result.numeric[i] = (up - down) / (2.0 * h);
    result.max_rel_error = std::max(result.max_rel_error,
                                    relative_error(result.analytic[i], result.numeric[i]));
  }
  return result;
}

}  // namespace adenet
