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

#include "autodiff/tape.h"

#include "util/error.h"

namespace adenet {

const char* op_name(OpKind kind) {
  switch (kind) {
    case OpKind::kConstant: return "constant";
    case OpKind::kInput: return "input";
    case OpKind::kParam: return "param";
    case OpKind::kMatmul: return "matmul";
    case OpKind::kMatvec: return "matvec";
    case OpKind::kMatvecT: return "matvec_t";
    case OpKind::kAdd: return "add";
    case OpKind::kMul: return "mul";
    case OpKind::kScale: return "scale";
    case OpKind::kTanh: return "tanh";
    case OpKind::kSigmoid: return "sigmoid";
    case OpKind::kConcat: return "concat";
    case OpKind::kSlice: return "slice";
    case OpKind::kStack: return "stack";
    case OpKind::kSoftmax: return "softmax";
    case OpKind::kLookup: return "lookup";
    case OpKind::kDropout: return "dropout";
    case OpKind::kCrossEntropy: return "cross_entropy";
    case OpKind::kSum: return "sum";
    case OpKind::kAddN: return "add_n";
    case OpKind::kConvMax: return "conv_max";
  }
  return "?";
}

const Tensor& Var::value() const { return tape_->value(id_); }

Tape::Tape(const ParamStore* params) : params_(params) {
  if (params_ != nullptr) {
    param_nodes_.assign(params_->size(), -1);
    param_grads_.resize(params_->size());
  }
}

Var Tape::constant(Tensor value) {
  return record(OpKind::kConstant, {}, std::move(value), nullptr);
}

Var Tape::input(Tensor value, bool requires_grad) {
  Var v = record(OpKind::kInput, {}, std::move(value), nullptr);
  nodes_.back().needs_grad = requires_grad;
  return v;
}

Var Tape::param(ParamId id) {
  if (params_ == nullptr) throw UsageError("tape has no parameter store");
  if (id >= param_nodes_.size()) throw UsageError("parameter id out of range");
  if (param_nodes_[id] >= 0) {
    return Var(this, static_cast<std::uint32_t>(param_nodes_[id]));
  }
  Node n;
  n.kind = OpKind::kParam;
  n.alias = &(*params_)[id].value;
  n.needs_grad = (*params_)[id].trainable;
  n.param = id;
  nodes_.push_back(std::move(n));
  const auto nid = static_cast<std::uint32_t>(nodes_.size() - 1);
  param_nodes_[id] = nid;
  return Var(this, nid);
}

const Tensor& Tape::value(std::uint32_t id) const {
  const Node& n = nodes_.at(id);
  return n.alias != nullptr ? *n.alias : n.owned;
}

std::span<const double> Tape::grad(Var v) const { return nodes_.at(v.id()).grad; }

Var Tape::record(OpKind kind, std::vector<std::uint32_t> inputs, Tensor value,
                 BackwardFn backward) {
  Node n;
  n.kind = kind;
  for (std::uint32_t i : inputs) {
    if (i >= nodes_.size()) throw UsageError("op input is not on this tape");
    n.needs_grad = n.needs_grad || nodes_[i].needs_grad;
  }
  n.inputs = std::move(inputs);
  n.owned = std::move(value);
  if (n.needs_grad) n.backward = std::move(backward);
  nodes_.push_back(std::move(n));
  return Var(this, static_cast<std::uint32_t>(nodes_.size() - 1));
}

std::span<double> Tape::grad_buffer(std::uint32_t id) {
  Node& n = nodes_[id];
  if (n.grad.empty()) n.grad.assign(value(id).size(), 0.0);
  return n.grad;
}

void Tape::backward(Var loss) {
  if (loss.tape() != this) throw UsageError("loss is not on this tape");
  const Tensor& lv = value(loss);
  if (lv.size() != 1) {
    throw DimensionError("backward() needs a scalar loss, got shape " +
                         shape_string(lv.shape()));
  }
  for (auto& n : nodes_) n.grad.clear();
  visits_ = 0;
  grad_buffer(loss.id())[0] = 1.0;
  for (std::int64_t i = loss.id(); i >= 0; --i) {
    Node& n = nodes_[static_cast<std::size_t>(i)];
    ++visits_;
    if (!n.needs_grad || n.grad.empty()) continue;
    if (n.kind == OpKind::kParam) {
      auto dst = param_grads_.dense(n.param, n.grad.size());
      for (std::size_t k = 0; k < n.grad.size(); ++k) dst[k] += n.grad[k];
    } else if (n.backward) {
      n.backward(*this, static_cast<std::uint32_t>(i));
    }
  }
}

}  // namespace adenet
