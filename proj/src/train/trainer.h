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

#ifndef ADENET_TRAIN_TRAINER_H_
#define ADENET_TRAIN_TRAINER_H_

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "autodiff/params.h"
#include "data/sample.h"
#include "eval/evaluator.h"
#include "network/model.h"
#include "train/config.h"

namespace adenet {

struct EpochRecord {
  std::size_t epoch = 0;
  double train_loss = 0.0;
  Prf val_er;
  Prf val_ade;
  double seconds = 0.0;

  nlohmann::ordered_json to_json() const;
};

struct TrainResult {
  std::unique_ptr<Model> model;  // parameters of the best epoch
  std::vector<EpochRecord> history;
  std::size_t best_epoch = 0;
  double best_score = -1.0;
  std::size_t steps = 0;
  bool early_stopped = false;
};

struct TrainOptions {
  // When non-empty: history.jsonl and checkpoint/ are written here.
  std::string out_dir;
  std::size_t workers = 1;
  // Called after every epoch; return false to stop.
  std::function<bool(const EpochRecord&)> on_epoch;
};

// Model with uniform init from the config seed; pretrained word vectors are
// loaded afterwards when configured.
std::unique_ptr<Model> init_model(const TrainConfig& config, Vocab vocab);

// Loss and summed parameter gradients for a batch. Per-sample gradients are
// reduced in sample order, then divided by the batch size, so the result does
// not depend on the worker count. Throws DivergenceError naming the sample
// ids when a loss or gradient is not finite.
struct BatchResult {
  double mean_loss = 0.0;
  Gradients grads;
};
BatchResult batch_gradients(const Model& model, const std::vector<const Sample*>& batch,
                            ForwardMode mode, std::uint64_t dropout_seed,
                            std::size_t workers = 1);

// Mean per-sample loss of inference-mode passes (no dropout, predicted labels
// fed back).
double mean_loss(const Model& model, const std::vector<Sample>& samples);

// Full training loop: seeded shuffle per epoch, batches (last partial batch
// included), Adagrad, validation after every epoch, best-epoch selection by
// the mean of entity and ADE F1.
TrainResult train(const TrainConfig& config, const std::vector<Sample>& train_set,
                  const std::vector<Sample>& val_set, const TrainOptions& options = {});

}  // namespace adenet

#endif  // ADENET_TRAIN_TRAINER_H_
