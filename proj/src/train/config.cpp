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

#include "train/config.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>

#include "util/error.h"
#include "util/io.h"

namespace adenet {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& v) {
  T out{};
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw UsageError("config key '" + key + "': cannot parse '" + v + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw UsageError("config key '" + key + "': expected a boolean, got '" + v + "'");
}

std::vector<std::size_t> parse_list(const std::string& key, const std::string& v) {
  std::vector<std::size_t> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number<std::size_t>(key, trim(item)));
  return out;
}

std::string real_text(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Field {
  std::function<void(TrainConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const TrainConfig&)> get;
};

template <typename T>
Field number_field(T TrainConfig::*m) {
  return {[m](TrainConfig& c, const std::string& k, const std::string& v) {
            c.*m = parse_number<T>(k, v);
          },
          [m](const TrainConfig& c) {
            if constexpr (std::is_floating_point_v<T>) {
              return real_text(c.*m);
            } else {
              return std::to_string(c.*m);
            }
          }};
}

Field bool_field(bool TrainConfig::*m) {
  return {[m](TrainConfig& c, const std::string& k, const std::string& v) {
            c.*m = parse_bool(k, v);
          },
          [m](const TrainConfig& c) { return std::string(c.*m ? "true" : "false"); }};
}

Field string_field(std::string TrainConfig::*m) {
  return {[m](TrainConfig& c, const std::string&, const std::string& v) { c.*m = v; },
          [m](const TrainConfig& c) { return c.*m; }};
}

const std::map<std::string, Field>& fields() {
  static const std::map<std::string, Field> table = {
      {"learning_rate", number_field(&TrainConfig::learning_rate)},
      {"batch_size", number_field(&TrainConfig::batch_size)},
      {"max_epochs", number_field(&TrainConfig::max_epochs)},
      {"dropout", number_field(&TrainConfig::dropout)},
      {"init_range", number_field(&TrainConfig::init_range)},
      {"adagrad_epsilon", number_field(&TrainConfig::adagrad_epsilon)},
      {"seed", number_field(&TrainConfig::seed)},
      {"patience", number_field(&TrainConfig::patience)},
      {"ade_weight", number_field(&TrainConfig::ade_weight)},
      {"attention", bool_field(&TrainConfig::attention)},
      {"char", bool_field(&TrainConfig::use_char)},
      {"pos", bool_field(&TrainConfig::use_pos)},
      {"teacher_forcing", bool_field(&TrainConfig::teacher_forcing)},
      {"word_dim", number_field(&TrainConfig::word_dim)},
      {"char_dim", number_field(&TrainConfig::char_dim)},
      {"char_widths",
       {[](TrainConfig& c, const std::string& k, const std::string& v) {
          c.char_widths = parse_list(k, v);
        },
        [](const TrainConfig& c) {
          std::string s;
          for (std::size_t i = 0; i < c.char_widths.size(); ++i) {
            s += (i ? "," : "") + std::to_string(c.char_widths[i]);
          }
          return s;
        }}},
      {"char_filters_per_width", number_field(&TrainConfig::char_filters_per_width)},
      {"pos_dim", number_field(&TrainConfig::pos_dim)},
      {"label_dim", number_field(&TrainConfig::label_dim)},
      {"hidden", number_field(&TrainConfig::hidden)},
      {"combine_dim", number_field(&TrainConfig::combine_dim)},
      {"drug_features", string_field(&TrainConfig::drug_features)},
      {"train_path", string_field(&TrainConfig::train_path)},
      {"val_path", string_field(&TrainConfig::val_path)},
      {"out_dir", string_field(&TrainConfig::out_dir)},
      {"embeddings_path", string_field(&TrainConfig::embeddings_path)},
      {"embeddings_required", bool_field(&TrainConfig::embeddings_required)},
      {"workers", number_field(&TrainConfig::workers)},
  };
  return table;
}

}  // namespace

void TrainConfig::set(const std::string& key, const std::string& value) {
  auto it = fields().find(key);
  if (it == fields().end()) throw UsageError("unknown config key '" + key + "'");
  it->second.set(*this, key, trim(value));
}

std::string TrainConfig::get(const std::string& key) const {
  auto it = fields().find(key);
  if (it == fields().end()) throw UsageError("unknown config key '" + key + "'");
  return it->second.get(*this);
}

std::vector<std::string> TrainConfig::keys() {
  std::vector<std::string> out;
  for (const auto& [k, f] : fields()) out.push_back(k);
  return out;
}

void TrainConfig::validate() const {
  auto positive = [](const char* name, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw UsageError(std::string(name) + " must be positive");
    }
  };
  positive("learning_rate", learning_rate);
  positive("init_range", init_range);
  positive("adagrad_epsilon", adagrad_epsilon);
  if (!(ade_weight >= 0.0) || !std::isfinite(ade_weight)) {
    throw UsageError("ade_weight must be non-negative");
  }
  if (batch_size == 0) throw UsageError("batch_size must be positive");
  if (max_epochs == 0) throw UsageError("max_epochs must be positive");
  if (!(dropout >= 0.0 && dropout < 1.0)) throw UsageError("dropout must lie in [0, 1)");
  if (drug_features != "full" && drug_features != "word") {
    throw UsageError("drug_features must be 'full' or 'word'");
  }
  if (word_dim == 0 || label_dim == 0 || hidden == 0 || combine_dim == 0) {
    throw UsageError("word_dim, label_dim, hidden and combine_dim must be positive");
  }
  if (use_char && (char_widths.empty() || char_dim == 0 || char_filters_per_width == 0)) {
    throw UsageError("char features need char_dim, char_widths and char_filters_per_width");
  }
  if (use_pos && pos_dim == 0) throw UsageError("pos features need pos_dim > 0");
}

ModelConfig TrainConfig::model_config() const {
  ModelConfig m;
  m.embedding.word_dim = word_dim;
  m.embedding.char_dim = char_dim;
  m.embedding.char_widths = char_widths;
  m.embedding.char_filters_per_width = char_filters_per_width;
  m.embedding.pos_dim = pos_dim;
  m.embedding.label_dim = label_dim;
  m.embedding.use_char = use_char;
  m.embedding.use_pos = use_pos;
  m.hidden = hidden;
  m.combine_dim = combine_dim;
  m.use_attention = attention;
  m.drug_full_features = drug_features == "full";
  m.dropout = dropout;
  m.teacher_forcing = teacher_forcing;
  m.ade_weight = ade_weight;
  return m;
}

nlohmann::ordered_json TrainConfig::to_json() const {
  nlohmann::ordered_json j;
  for (const auto& [k, f] : fields()) j[k] = f.get(*this);
  return j;
}

TrainConfig TrainConfig::parse(const std::string& text, const std::string& origin) {
  TrainConfig c;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(origin + ":" + std::to_string(lineno) + ": expected key = value");
    }
    try {
      c.set(trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const UsageError& e) {
      throw UsageError(origin + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return c;
}

TrainConfig TrainConfig::load(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const DataError&) {
    throw UsageError("cannot read config file " + path);
  }
  return parse(text, path);
}

std::size_t resolve_workers(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ADENET_WORKERS")) {
    std::size_t n = 0;
    const std::string s(env);
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (ec == std::errc() && p == s.data() + s.size() && n > 0) return n;
    log_warning("ignoring ADENET_WORKERS='" + s + "'");
  }
  return 1;
}

}  // namespace adenet
