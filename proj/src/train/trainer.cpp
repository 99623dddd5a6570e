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

#include "train/trainer.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <thread>

#include "network/checkpoint.h"
#include "train/adagrad.h"
#include "util/error.h"
#include "util/io.h"
#include "util/rng.h"

namespace adenet {

namespace {

// Stream tags for seeds derived from the run seed.
constexpr std::uint64_t kInitStream = 0;
constexpr std::uint64_t kShuffleStream = 1;
constexpr std::uint64_t kDropoutStream = 2;

bool grads_finite(const Gradients& g) { return std::isfinite(g.squared_norm()); }

std::string batch_ids(const std::vector<const Sample*>& batch) {
  std::string out;
  for (const Sample* s : batch) out += (out.empty() ? "" : ", ") + s->id;
  return out;
}

}  // namespace

nlohmann::ordered_json EpochRecord::to_json() const {
  nlohmann::ordered_json j;
  j["epoch"] = epoch;
  j["train_loss"] = train_loss;
  j["val_er_p"] = val_er.precision;
  j["val_er_r"] = val_er.recall;
  j["val_er_f1"] = val_er.f1;
  j["val_ade_p"] = val_ade.precision;
  j["val_ade_r"] = val_ade.recall;
  j["val_ade_f1"] = val_ade.f1;
  j["seconds"] = seconds;
  return j;
}

std::unique_ptr<Model> init_model(const TrainConfig& config, Vocab vocab) {
  config.validate();
  auto model = std::make_unique<Model>(config.model_config(), std::move(vocab));
  model->init_uniform(config.init_range, derive_seed(config.seed, kInitStream));
  if (!config.embeddings_path.empty()) {
    const PretrainedStats st = model->embeddings().load_pretrained(
        model->params(), model->vocab(), config.embeddings_path, !config.embeddings_required);
    if (st.loaded) {
      log_info("pretrained vectors: " + std::to_string(st.covered) + " of " +
               std::to_string(model->vocab().word_count()) + " words covered");
    }
  }
  return model;
}

BatchResult batch_gradients(const Model& model, const std::vector<const Sample*>& batch,
                            ForwardMode mode, std::uint64_t dropout_seed, std::size_t workers) {
  if (batch.empty()) throw UsageError("empty batch");
  BatchResult result;
  result.grads.resize(model.params().size());
  workers = std::clamp<std::size_t>(workers, 1, batch.size());
  std::vector<double> losses(batch.size(), 0.0);
  std::vector<Gradients> local(workers);

  auto run_one = [&](std::size_t i, Gradients& out) {
    Tape tape(&model.params());
    Rng rng(derive_seed(dropout_seed, i));
    const EncodedSample enc = model.encode_sample(*batch[i]);
    ForwardResult fr = model.forward(tape, enc, mode, &rng);
    losses[i] = fr.loss.value().item();
    tape.backward(fr.loss);
    out = std::move(tape.param_grads());
  };

  // Waves of `workers` samples; each wave is reduced in sample order.
  for (std::size_t start = 0; start < batch.size(); start += workers) {
    const std::size_t n = std::min(workers, batch.size() - start);
    if (n == 1) {
      run_one(start, local[0]);
    } else {
      std::vector<std::exception_ptr> errors(n);
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < n; ++w) {
        pool.emplace_back([&, w] {
          try {
            run_one(start + w, local[w]);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
      for (auto& t : pool) t.join();
      for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    }
    for (std::size_t w = 0; w < n; ++w) result.grads.merge(local[w]);
  }

  double total = 0.0;
  for (double l : losses) total += l;
  result.mean_loss = total / static_cast<double>(batch.size());
  result.grads.scale(1.0 / static_cast<double>(batch.size()));
  if (!std::isfinite(result.mean_loss) || !grads_finite(result.grads)) {
    throw DivergenceError("non-finite loss or gradient in batch [" + batch_ids(batch) + "]");
  }
  return result;
}

double mean_loss(const Model& model, const std::vector<Sample>& samples) {
  if (samples.empty()) throw DataError("mean_loss of an empty set");
  double total = 0.0;
  for (const auto& s : samples) {
    Tape tape(&model.params());
    const EncodedSample enc = model.encode_sample(s);
    total += model.forward(tape, enc, ForwardMode::kInference, nullptr).loss.value().item();
  }
  return total / static_cast<double>(samples.size());
}

TrainResult train(const TrainConfig& config, const std::vector<Sample>& train_set,
                  const std::vector<Sample>& val_set, const TrainOptions& options) {
  config.validate();
  if (train_set.empty()) throw DataError("training set is empty");
  if (val_set.empty()) throw DataError("validation set is empty");

  std::unique_ptr<Model> model = init_model(config, Vocab::build(train_set));
  Adagrad opt(model->params(), config.learning_rate, config.adagrad_epsilon);
  const ForwardMode mode =
      config.teacher_forcing ? ForwardMode::kTeacherForced : ForwardMode::kFreeRunning;

  std::ofstream history_out;
  std::string checkpoint_dir;
  if (!options.out_dir.empty()) {
    ensure_directory(options.out_dir);
    checkpoint_dir = (std::filesystem::path(options.out_dir) / "checkpoint").string();
    const std::string history_path = (std::filesystem::path(options.out_dir) / "history.jsonl").string();
    history_out.open(history_path, std::ios::binary | std::ios::trunc);
    if (!history_out) throw DataError("cannot write " + history_path);
  }

  TrainResult result;
  std::string best_blob;
  Rng shuffle_rng(derive_seed(config.seed, kShuffleStream));
  std::vector<std::size_t> order(train_set.size());
  std::size_t stale = 0;

  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    const auto t0 = std::chrono::steady_clock::now();
    std::iota(order.begin(), order.end(), 0);
    shuffle_rng.shuffle(order);
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      std::vector<const Sample*> batch;
      for (std::size_t k = start; k < end; ++k) batch.push_back(&train_set[order[k]]);
      const std::uint64_t dropout_seed =
          derive_seed(config.seed, kDropoutStream, result.steps);
      BatchResult br = batch_gradients(*model, batch, mode, dropout_seed, options.workers);
      opt.step(model->params(), br.grads);
      for (const auto& p : model->params()) {
        if (!p.value.all_finite()) {
          throw DivergenceError("parameter '" + p.name + "' became non-finite after batch [" +
                                batch_ids(batch) + "]");
        }
      }
      loss_sum += br.mean_loss * static_cast<double>(batch.size());
      ++result.steps;
    }

    EpochRecord rec;
    rec.epoch = epoch;
    rec.train_loss = loss_sum / static_cast<double>(train_set.size());
    const EvalReport report = evaluate(*model, val_set, options.workers);
    rec.val_er = report.er;
    rec.val_ade = report.ade;
    rec.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    result.history.push_back(rec);
    if (history_out.is_open()) {
      history_out << rec.to_json().dump() << "\n";
      history_out.flush();
    }
    char line[160];
    std::snprintf(line, sizeof line,
                  "epoch %zu  loss %.6f  val ER F1 %.2f  val ADE F1 %.2f  (%.1fs)", epoch,
                  rec.train_loss, rec.val_er.f1, rec.val_ade.f1, rec.seconds);
    log_info(line);

    const double score = report.selection_score();
    if (score > result.best_score) {
      result.best_score = score;
      result.best_epoch = epoch;
      best_blob = encode_blob(model->params());
      stale = 0;
      if (!checkpoint_dir.empty()) {
        nlohmann::ordered_json extra;
        extra["epoch"] = epoch;
        extra["val_er_f1"] = report.er.f1;
        extra["val_ade_f1"] = report.ade.f1;
        save_checkpoint(*model, checkpoint_dir, extra);
      }
    } else {
      ++stale;
    }
    if (options.on_epoch && !options.on_epoch(rec)) break;
    if (config.patience > 0 && stale >= config.patience) {
      result.early_stopped = true;
      log_info("no validation improvement for " + std::to_string(stale) + " epochs; stopping");
      break;
    }
  }
  decode_blob(best_blob, model->params());
  result.model = std::move(model);
  return result;
}

}  // namespace adenet
