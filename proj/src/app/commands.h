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

#ifndef ADENET_APP_COMMANDS_H_
#define ADENET_APP_COMMANDS_H_

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "data/corpus.h"
#include "eval/evaluator.h"
#include "network/model.h"
#include "train/config.h"
#include "train/trainer.h"

namespace adenet {

inline constexpr const char* kEngineVersion = "0.1.0";

// Record of one command invocation, written as JSON next to its outputs.
class RunManifest {
 public:
  explicit RunManifest(std::string command);

  void set_config(nlohmann::ordered_json config) { config_ = std::move(config); }
  void set_seed(std::uint64_t seed) { seed_ = seed; has_seed_ = true; }
  void add_input(const std::string& path);
  void add_output(const std::string& path) { outputs_.push_back(path); }
  void set_result(nlohmann::ordered_json result) { result_ = std::move(result); }

  nlohmann::ordered_json to_json() const;
  void write(const std::string& path) const;

 private:
  std::string command_;
  nlohmann::ordered_json config_ = nlohmann::ordered_json::object();
  std::uint64_t seed_ = 0;
  bool has_seed_ = false;
  std::vector<std::pair<std::string, std::string>> inputs_;
  std::vector<std::string> outputs_;
  nlohmann::ordered_json result_;
  std::chrono::steady_clock::time_point start_;
};

// Each command writes its outputs plus a manifest: <out_dir>/manifest.json
// for directory outputs, <out_path>.manifest.json for single files.

ConvertStats run_convert(const std::string& raw_path, const std::string& out_dir,
                         std::uint64_t seed);

TrainResult run_train(const TrainConfig& config);

EvalReport run_evaluate(const Model& model, const std::string& model_dir,
                        const std::string& dataset_path, const std::string& report_path,
                        std::size_t workers);

// Reads samples (labels optional), writes them back with predicted
// entity_labels and ade_labels in input order.
std::size_t run_predict(const Model& model, const std::string& model_dir,
                        const std::string& in_path, const std::string& out_path,
                        std::size_t workers);

// format: "csv" or "ppm".
void run_export_attention(const Model& model, const std::string& model_dir,
                          const std::string& dataset_path, const std::string& sample_id,
                          const std::string& format, const std::string& out_path);

// Writes train.jsonl and val.jsonl (the held-out part) of the synthetic
// fixture, plus raw.txt in the pipe-delimited corpus format.
void run_make_fixture(const std::string& out_dir, std::uint64_t seed);

}  // namespace adenet

#endif  // ADENET_APP_COMMANDS_H_
