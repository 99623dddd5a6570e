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

#ifndef ADENET_AUTODIFF_TAPE_H_
#define ADENET_AUTODIFF_TAPE_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "autodiff/params.h"
#include "autodiff/tensor.h"

namespace adenet {

enum class OpKind : std::uint8_t {
  kConstant,
  kInput,
  kParam,
  kMatmul,
  kMatvec,
  kMatvecT,
  kAdd,
  kMul,
  kScale,
  kTanh,
  kSigmoid,
  kConcat,
  kSlice,
  kStack,
  kSoftmax,
  kLookup,
  kDropout,
  kCrossEntropy,
  kSum,
  kAddN,
  kConvMax,
};

const char* op_name(OpKind kind);

class Tape;

// Handle to a node on a tape. Cheap to copy; valid as long as the tape lives.
class Var {
 public:
  Var() = default;
  Var(Tape* tape, std::uint32_t id) : tape_(tape), id_(id) {}

  Tape* tape() const { return tape_; }
  std::uint32_t id() const { return id_; }
  bool valid() const { return tape_ != nullptr; }

  const Tensor& value() const;
  const Shape& shape() const { return value().shape(); }

 private:
  Tape* tape_ = nullptr;
  std::uint32_t id_ = 0;
};

// Dynamic reverse-mode tape. Nodes are appended in evaluation order, so the
// node list is topologically sorted by construction and backward() is a
// single reverse sweep. One tape per sample; parameter gradients land in the
// tape's own Gradients so independent tapes can run on separate threads and
// be reduced afterwards.
class Tape {
 public:
  using BackwardFn = std::function<void(Tape&, std::uint32_t self)>;

  // params may be null for tapes that only use input()/constant() leaves.
  explicit Tape(const ParamStore* params = nullptr);

  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  Var constant(Tensor value);
  Var input(Tensor value, bool requires_grad = true);
  // Leaf aliasing a stored parameter (no copy). Memoized per id.
  Var param(ParamId id);

  const Tensor& value(Var v) const { return value(v.id()); }
  const Tensor& value(std::uint32_t id) const;

  // Gradient of the last backward() loss w.r.t. v; empty if none flowed.
  std::span<const double> grad(Var v) const;

  void backward(Var loss);

  std::size_t size() const { return nodes_.size(); }
  OpKind kind(std::uint32_t id) const { return nodes_.at(id).kind; }
  const std::vector<std::uint32_t>& inputs(std::uint32_t id) const {
    return nodes_.at(id).inputs;
  }
  bool needs_grad(std::uint32_t id) const { return nodes_[id].needs_grad; }
  bool needs_grad(Var v) const { return needs_grad(v.id()); }
  std::size_t backward_visits() const { return visits_; }

  Gradients& param_grads() { return param_grads_; }
  const Gradients& param_grads() const { return param_grads_; }

  // Parameter id for a kParam node, or SIZE_MAX.
  std::size_t param_of(std::uint32_t id) const { return nodes_.at(id).param; }

  // Op-implementation surface.
  Var record(OpKind kind, std::vector<std::uint32_t> inputs, Tensor value,
             BackwardFn backward);
  std::span<double> grad_buffer(std::uint32_t id);
  bool has_grad(std::uint32_t id) const { return !nodes_[id].grad.empty(); }

 private:
  struct Node {
    OpKind kind;
    std::vector<std::uint32_t> inputs;
    Tensor owned;
    const Tensor* alias = nullptr;
    std::vector<double> grad;
    BackwardFn backward;
    bool needs_grad = false;
    std::size_t param = SIZE_MAX;
  };

  const ParamStore* params_;
  std::vector<Node> nodes_;
  std::vector<std::int64_t> param_nodes_;
  Gradients param_grads_;
  std::size_t visits_ = 0;
};

}  // namespace adenet

#endif  // ADENET_AUTODIFF_TAPE_H_
