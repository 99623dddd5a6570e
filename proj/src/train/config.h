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

#ifndef ADENET_TRAIN_CONFIG_H_
#define ADENET_TRAIN_CONFIG_H_

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "network/model.h"

namespace adenet {

// Training run settings. Read from a flat "key = value" text file; '#'
// starts a comment. Keys missing from the file keep the defaults below.
struct TrainConfig {
  // Optimization.
  double learning_rate = 0.001;
  std::size_t batch_size = 16;
  std::size_t max_epochs = 10;
  double dropout = 0.5;
  double init_range = 0.01;
  double adagrad_epsilon = 1e-8;
  std::uint64_t seed = 1;
  std::size_t patience = 0;  // epochs without improvement before stopping; 0 disables
  double ade_weight = 1.0;

  // Ablations.
  bool attention = true;
  bool use_char = true;
  bool use_pos = true;
  bool teacher_forcing = false;

  // Dimensions.
  std::size_t word_dim = 200;
  std::size_t char_dim = 25;
  std::vector<std::size_t> char_widths = {1, 2, 3, 4, 5, 6};
  std::size_t char_filters_per_width = 25;
  std::size_t pos_dim = 25;
  std::size_t label_dim = 25;
  std::size_t hidden = 150;
  std::size_t combine_dim = 300;
  std::string drug_features = "full";  // full | word

  // Files.
  std::string train_path;
  std::string val_path;
  std::string out_dir = "run";
  std::string embeddings_path;  // word2vec text; empty for none
  bool embeddings_required = false;

  std::size_t workers = 0;  // 0: ADENET_WORKERS or 1

  // Applies one key/value pair; throws UsageError for unknown keys or values
  // that do not parse.
  void set(const std::string& key, const std::string& value);
  std::string get(const std::string& key) const;
  // Throws UsageError when a setting is out of range.
  void validate() const;

  ModelConfig model_config() const;
  nlohmann::ordered_json to_json() const;

  static std::vector<std::string> keys();
  static TrainConfig parse(const std::string& text, const std::string& origin = "config");
  static TrainConfig load(const std::string& path);
};

// Worker count: the explicit value when nonzero, else ADENET_WORKERS, else 1.
std::size_t resolve_workers(std::size_t requested);

}  // namespace adenet

#endif  // ADENET_TRAIN_CONFIG_H_
