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

#ifndef ADENET_AUTODIFF_OPS_H_
#define ADENET_AUTODIFF_OPS_H_

#include <cstdint>
#include <vector>

#include "autodiff/tape.h"
#include "util/rng.h"

// Differentiable primitives. Each records one node on the tape of its
// inputs; all inputs of one call must live on the same tape.
namespace adenet::ad {

// 1 = position participates, 0 = masked out.
using Mask = std::vector<std::uint8_t>;

inline constexpr double kProbabilityFloor = 1e-12;
inline constexpr double kMaskedLogit = -1e30;

// [m x k] * [k x n] -> [m x n].
Var matmul(Var a, Var b);
// [m x k] * [k] -> [m].
Var matvec(Var w, Var x);
// [m x k]^T * [m] -> [k].
Var matvec_t(Var w, Var x);

Var add(Var a, Var b);
Var mul(Var a, Var b);
Var scale(Var x, double factor);
Var tanh(Var x);
Var sigmoid(Var x);

Var concat(const std::vector<Var>& parts, std::size_t axis = 0);
// Contiguous range [begin, begin + length) of a rank-1 tensor.
Var slice(Var x, std::size_t begin, std::size_t length);
// Stacks equal-length rank-1 tensors into the rows of a matrix.
Var stack(const std::vector<Var>& rows);

// Softmax over a rank-1 tensor. Masked entries are exactly zero on output.
Var softmax(Var x);
Var softmax(Var x, const Mask& mask);

// Row `index` of a [V x d] table. When the table is a parameter leaf the
// backward pass writes a row-sparse gradient into the tape's Gradients.
Var lookup(Var table, std::size_t index);

// Inverted dropout. Identity (no node recorded) when !training or rate == 0.
Var dropout(Var x, double rate, bool training, Rng& rng);

// -log(max(dist[gold], 1e-12)), scalar.
Var cross_entropy(Var dist, std::size_t gold);

Var sum(Var x);
Var add_n(const std::vector<Var>& terms);

// Valid 1-D convolution of x [n x d] with a bank of F filters of width w
// (filters [F x (w*d)], bias [F]), followed by max over the n-w+1 positions.
// Output [F].
Var conv_max(Var x, Var filters, Var bias, std::size_t width);

}  // namespace adenet::ad

#endif  // ADENET_AUTODIFF_OPS_H_
