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

#include "app/commands.h"

#include <filesystem>

#include "data/fixture.h"
#include "network/checkpoint.h"
#include "util/error.h"
#include "util/hash.h"
#include "util/io.h"

namespace adenet {

namespace fs = std::filesystem;

namespace {

std::string in_dir(const std::string& dir, const char* name) {
  return (fs::path(dir) / name).string();
}

std::string beside(const std::string& path) { return path + ".manifest.json"; }

void ensure_parent(const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) ensure_directory(parent.string());
}

nlohmann::ordered_json model_echo(const Model& model, const std::string& model_dir) {
  nlohmann::ordered_json j;
  j["checkpoint"] = model_dir;
  j["model"] = model.config().to_json();
  j["vocab_hash"] = model.vocab().hash_hex();
  return j;
}

}  // namespace

RunManifest::RunManifest(std::string command)
    : command_(std::move(command)), start_(std::chrono::steady_clock::now()) {}

void RunManifest::add_input(const std::string& path) {
  inputs_.emplace_back(path, file_digest(path));
}

nlohmann::ordered_json RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command_;
  j["engine_version"] = kEngineVersion;
  j["config"] = config_;
  j["seed"] = has_seed_ ? nlohmann::ordered_json(seed_) : nlohmann::ordered_json();
  auto inputs = nlohmann::ordered_json::array();
  for (const auto& [path, digest] : inputs_) {
    inputs.push_back({{"path", path}, {"digest", digest}});
  }
  j["inputs"] = std::move(inputs);
  j["outputs"] = outputs_;
  if (!result_.is_null()) j["result"] = result_;
  j["seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  return j;
}

void RunManifest::write(const std::string& path) const {
  write_file(path, to_json().dump(2) + "\n");
}

ConvertStats run_convert(const std::string& raw_path, const std::string& out_dir,
                         std::uint64_t seed) {
  RunManifest manifest("convert");
  manifest.set_seed(seed);
  manifest.set_config({{"raw_path", raw_path}, {"out_dir", out_dir}});
  manifest.add_input(raw_path);
  ConvertStats stats = convert_corpus(raw_path, out_dir, seed);
  for (const char* f : {"train.jsonl", "val.jsonl", "test.jsonl", "rejects.tsv",
                        "quarantine.tsv", "stats.json"}) {
    manifest.add_output(in_dir(out_dir, f));
  }
  manifest.set_result(nlohmann::ordered_json::parse(stats_to_json(stats)));
  manifest.write(in_dir(out_dir, "manifest.json"));
  return stats;
}

TrainResult run_train(const TrainConfig& config) {
  config.validate();
  if (config.train_path.empty()) throw UsageError("train_path is not set");
  if (config.val_path.empty()) throw UsageError("val_path is not set");
  RunManifest manifest("train");
  manifest.set_config(config.to_json());
  manifest.set_seed(config.seed);
  manifest.add_input(config.train_path);
  manifest.add_input(config.val_path);
  if (!config.embeddings_path.empty() && fs::exists(config.embeddings_path)) {
    manifest.add_input(config.embeddings_path);
  }
  const auto train_set = read_samples(config.train_path);
  const auto val_set = read_samples(config.val_path);
  ensure_directory(config.out_dir);

  TrainOptions options;
  options.out_dir = config.out_dir;
  options.workers = resolve_workers(config.workers);
  TrainResult result = train(config, train_set, val_set, options);

  manifest.add_output(in_dir(config.out_dir, "checkpoint"));
  manifest.add_output(in_dir(config.out_dir, "history.jsonl"));
  nlohmann::ordered_json summary;
  summary["best_epoch"] = result.best_epoch;
  summary["best_score"] = result.best_score;
  summary["epochs_run"] = result.history.size();
  summary["steps"] = result.steps;
  summary["early_stopped"] = result.early_stopped;
  summary["vocab_hash"] = result.model->vocab().hash_hex();
  summary["parameters"] = result.model->params().scalar_count();
  manifest.set_result(std::move(summary));
  manifest.write(in_dir(config.out_dir, "manifest.json"));
  return result;
}

EvalReport run_evaluate(const Model& model, const std::string& model_dir,
                        const std::string& dataset_path, const std::string& report_path,
                        std::size_t workers) {
  RunManifest manifest("evaluate");
  manifest.set_config(model_echo(model, model_dir));
  manifest.add_input(in_dir(model_dir, kCheckpointBlob));
  manifest.add_input(dataset_path);
  const auto samples = read_samples(dataset_path);
  const EvalReport report = evaluate(model, samples, resolve_workers(workers));
  ensure_parent(report_path);
  write_file(report_path, report.to_json().dump(2) + "\n");
  manifest.add_output(report_path);
  manifest.set_result({{"er_f1", report.er.f1}, {"ade_f1", report.ade.f1}});
  manifest.write(beside(report_path));
  return report;
}

std::size_t run_predict(const Model& model, const std::string& model_dir,
                        const std::string& in_path, const std::string& out_path,
                        std::size_t workers) {
  RunManifest manifest("predict");
  manifest.set_config(model_echo(model, model_dir));
  manifest.add_input(in_dir(model_dir, kCheckpointBlob));
  manifest.add_input(in_path);
  const auto samples = read_samples(in_path, false);
  const auto traces = predict_all(model, samples, resolve_workers(workers));
  std::vector<Sample> out;
  out.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    out.push_back(apply_prediction(samples[i], traces[i]));
  }
  ensure_parent(out_path);
  write_samples(out_path, out);
  manifest.add_output(out_path);
  manifest.set_result({{"samples", out.size()}});
  manifest.write(beside(out_path));
  return out.size();
}

void run_export_attention(const Model& model, const std::string& model_dir,
                          const std::string& dataset_path, const std::string& sample_id,
                          const std::string& format, const std::string& out_path) {
  if (format != "csv" && format != "ppm") {
    throw UsageError("attention format must be csv or ppm, got '" + format + "'");
  }
  RunManifest manifest("export-attention");
  nlohmann::ordered_json cfg = model_echo(model, model_dir);
  cfg["sample_id"] = sample_id;
  cfg["format"] = format;
  manifest.set_config(std::move(cfg));
  manifest.add_input(in_dir(model_dir, kCheckpointBlob));
  manifest.add_input(dataset_path);
  const auto samples = read_samples(dataset_path, false);
  const Sample* found = nullptr;
  for (const auto& s : samples) {
    if (s.id == sample_id) {
      found = &s;
      break;
    }
  }
  if (found == nullptr) throw DataError("no sample with id '" + sample_id + "' in " + dataset_path);
  const ForwardTrace trace = model.predict(model.encode_sample(*found));
  ensure_parent(out_path);
  write_file(out_path, format == "csv" ? attention_csv(found->tokens, trace.attention)
                                       : attention_ppm(trace.attention));
  manifest.add_output(out_path);
  manifest.set_result({{"tokens", found->size()}});
  manifest.write(beside(out_path));
}

void run_make_fixture(const std::string& out_dir, std::uint64_t seed) {
  RunManifest manifest("make-fixture");
  manifest.set_seed(seed);
  manifest.set_config({{"out_dir", out_dir}});
  const Fixture f = make_fixture(32, 8, seed);
  ensure_directory(out_dir);
  write_samples(in_dir(out_dir, "train.jsonl"), f.train);
  write_samples(in_dir(out_dir, "val.jsonl"), f.held_out);
  std::string raw;
  for (const auto& line : fixture_raw_lines(f.train)) raw += line + "\n";
  write_file(in_dir(out_dir, "raw.txt"), raw);
  for (const char* name : {"train.jsonl", "val.jsonl", "raw.txt"}) {
    manifest.add_output(in_dir(out_dir, name));
  }
  manifest.set_result({{"train", f.train.size()}, {"held_out", f.held_out.size()}});
  manifest.write(in_dir(out_dir, "manifest.json"));
}

}  // namespace adenet
