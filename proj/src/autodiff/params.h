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

#ifndef ADENET_AUTODIFF_PARAMS_H_
#define ADENET_AUTODIFF_PARAMS_H_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "autodiff/tensor.h"

namespace adenet {

using ParamId = std::size_t;

struct Parameter {
  std::string name;
  Tensor value;
  // Frozen parameters never receive gradients or optimizer updates.
  bool trainable = true;
};

// Ordered, named collection of model parameters. Ids are dense indices in
// insertion order, so two stores built by the same code line up slot by slot.
class ParamStore {
 public:
  ParamId add(std::string name, Shape shape, bool trainable = true);

  Parameter& operator[](ParamId id) { return params_.at(id); }
  const Parameter& operator[](ParamId id) const { return params_.at(id); }

  std::size_t size() const { return params_.size(); }
  ParamId find(const std::string& name) const;  // throws if absent
  bool contains(const std::string& name) const;

  std::size_t scalar_count() const;

  auto begin() { return params_.begin(); }
  auto end() { return params_.end(); }
  auto begin() const { return params_.begin(); }
  auto end() const { return params_.end(); }

 private:
  std::vector<Parameter> params_;
};

// Per-parameter gradient accumulator. Dense buffers are allocated on first
// use; embedding tables accumulate row-sparse gradients instead so a sample
// touching a handful of vocabulary rows does not allocate the whole table.
class Gradients {
 public:
  struct Slot {
    std::vector<double> dense;
    std::map<std::size_t, std::vector<double>> rows;
    bool empty() const { return dense.empty() && rows.empty(); }
  };

  explicit Gradients(std::size_t slots = 0) : slots_(slots) {}

  void resize(std::size_t slots) { slots_.resize(slots); }
  std::size_t size() const { return slots_.size(); }

  std::span<double> dense(ParamId id, std::size_t length);
  std::span<double> row(ParamId id, std::size_t row, std::size_t width);

  const Slot& slot(ParamId id) const { return slots_.at(id); }

  // Adds other's gradients slot by slot, iterating rows in index order.
  void merge(const Gradients& other);
  void scale(double factor);
  void clear();

  // Full dense view of one slot (rows scattered into a zero buffer).
  std::vector<double> to_dense(ParamId id, const Tensor& like) const;

  // Squared L2 norm over all slots; used for divergence diagnostics.
  double squared_norm() const;

 private:
  std::vector<Slot> slots_;
};

}  // namespace adenet

#endif  // ADENET_AUTODIFF_PARAMS_H_
