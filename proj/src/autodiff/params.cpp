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

#include "autodiff/params.h"

#include "util/error.h"

namespace adenet {

ParamId ParamStore::add(std::string name, Shape shape, bool trainable) {
  if (contains(name)) throw UsageError("duplicate parameter name " + name);
  Parameter p;
  p.name = std::move(name);
  p.value = Tensor(std::move(shape));
  p.value.set_requires_grad(trainable);
  p.trainable = trainable;
  params_.push_back(std::move(p));
  return params_.size() - 1;
}

ParamId ParamStore::find(const std::string& name) const {
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (params_[i].name == name) return i;
  }
  throw UsageError("unknown parameter " + name);
}

bool ParamStore::contains(const std::string& name) const {
  for (const auto& p : params_) {
    if (p.name == name) return true;
  }
  return false;
}

std::size_t ParamStore::scalar_count() const {
  std::size_t n = 0;
  for (const auto& p : params_) n += p.value.size();
  return n;
}

std::span<double> Gradients::dense(ParamId id, std::size_t length) {
  auto& d = slots_.at(id).dense;
  if (d.size() != length) d.assign(length, 0.0);
  return d;
}

std::span<double> Gradients::row(ParamId id, std::size_t row, std::size_t width) {
  auto& r = slots_.at(id).rows[row];
  if (r.size() != width) r.assign(width, 0.0);
  return r;
}

void Gradients::merge(const Gradients& other) {
  if (slots_.size() < other.slots_.size()) slots_.resize(other.slots_.size());
  for (std::size_t s = 0; s < other.slots_.size(); ++s) {
    const Slot& src = other.slots_[s];
    Slot& dst = slots_[s];
    if (!src.dense.empty()) {
      if (dst.dense.empty()) dst.dense.assign(src.dense.size(), 0.0);
      for (std::size_t i = 0; i < src.dense.size(); ++i) dst.dense[i] += src.dense[i];
    }
    for (const auto& [r, g] : src.rows) {
      auto& d = dst.rows[r];
      if (d.empty()) d.assign(g.size(), 0.0);
      for (std::size_t i = 0; i < g.size(); ++i) d[i] += g[i];
    }
  }
}

void Gradients::scale(double factor) {
  for (auto& s : slots_) {
    for (double& v : s.dense) v *= factor;
    for (auto& [r, g] : s.rows) {
      for (double& v : g) v *= factor;
    }
  }
}

void Gradients::clear() {
  for (auto& s : slots_) {
    s.dense.clear();
    s.rows.clear();
  }
}

std::vector<double> Gradients::to_dense(ParamId id, const Tensor& like) const {
  std::vector<double> out(like.size(), 0.0);
  const Slot& s = slots_.at(id);
  for (std::size_t i = 0; i < s.dense.size(); ++i) out[i] += s.dense[i];
  const std::size_t width = like.rank() == 0 ? 1 : like.shape().back();
  for (const auto& [r, g] : s.rows) {
    for (std::size_t i = 0; i < g.size(); ++i) out[r * width + i] += g[i];
  }
  return out;
}

double Gradients::squared_norm() const {
  double n = 0.0;
  for (const auto& s : slots_) {
    for (double v : s.dense) n += v * v;
    for (const auto& [r, g] : s.rows) {
      for (double v : g) n += v * v;
    }
  }
  return n;
}

}  // namespace adenet
