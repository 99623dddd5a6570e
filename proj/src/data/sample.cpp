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

#include "data/sample.h"

#include <json.hpp>

#include "util/error.h"
#include "util/io.h"

namespace adenet {

using nlohmann::json;

std::size_t entity_label_id(std::string_view tag) {
  for (std::size_t i = 0; i < kEntityLabels.size(); ++i) {
    if (kEntityLabels[i] == tag) return i;
  }
  throw DataError("unknown entity label '" + std::string(tag) + "'");
}

bool is_disease_label(std::size_t id) { return id == 3 || id == 4; }
bool is_drug_label(std::size_t id) { return id == 1 || id == 2; }

std::vector<std::string> Sample::drug_tokens() const {
  return {tokens.begin() + static_cast<std::ptrdiff_t>(drug_begin),
          tokens.begin() + static_cast<std::ptrdiff_t>(drug_end)};
}

void validate_sample(const Sample& s) {
  const std::string where = "sample " + s.id + ": ";
  const std::size_t n = s.tokens.size();
  if (n == 0) throw DataError(where + "no tokens");
  if (s.pos.size() != n || s.entity_labels.size() != n || s.ade_labels.size() != n) {
    throw DataError(where + "per-token fields differ in length");
  }
  if (s.drug_begin >= s.drug_end || s.drug_end > n) {
    throw DataError(where + "drug span out of range");
  }
  std::size_t prev = kOutsideLabel;
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t id = entity_label_id(s.entity_labels[t]);
    // I-X must continue B-X or I-X of the same type.
    if (id == 2 && !is_drug_label(prev)) {
      throw DataError(where + "I-Drug without a preceding Drug tag at token " +
                      std::to_string(t));
    }
    if (id == 4 && !is_disease_label(prev)) {
      throw DataError(where + "I-Disease without a preceding Disease tag at token " +
                      std::to_string(t));
    }
    if (s.ade_labels[t] != 0 && s.ade_labels[t] != 1) {
      throw DataError(where + "ADE label must be 0 or 1");
    }
    if (s.ade_labels[t] == 1 && !is_disease_label(id)) {
      throw DataError(where + "ADE-positive token " + std::to_string(t) +
                      " is not tagged as Disease");
    }
    prev = id;
  }
  for (std::size_t t = s.drug_begin; t < s.drug_end; ++t) {
    if (!is_drug_label(entity_label_id(s.entity_labels[t]))) {
      throw DataError(where + "drug span token " + std::to_string(t) +
                      " is not tagged as Drug");
    }
  }
}

std::string sample_to_json(const Sample& s) {
  json j;
  j["id"] = s.id;
  j["sentence_id"] = s.sentence_id;
  j["tokens"] = s.tokens;
  j["pos"] = s.pos;
  j["entity_labels"] = s.entity_labels;
  j["drug_span"] = {s.drug_begin, s.drug_end};
  j["drug_text"] = s.drug_text;
  j["ade_labels"] = s.ade_labels;
  return j.dump();
}

Sample sample_from_json(std::string_view line, bool labels_required) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed sample JSON: ") + e.what());
  }
  Sample s;
  try {
    s.tokens = j.at("tokens").get<std::vector<std::string>>();
    s.id = j.value("id", std::string());
    s.sentence_id = j.value("sentence_id", s.id);
    if (j.contains("pos")) {
      s.pos = j["pos"].get<std::vector<std::string>>();
    } else {
      s.pos.assign(s.tokens.size(), "<unk>");
    }
    const auto span = j.at("drug_span").get<std::vector<std::size_t>>();
    if (span.size() != 2) throw DataError("drug_span must have two entries");
    s.drug_begin = span[0];
    s.drug_end = span[1];
    s.drug_text = j.value("drug_text", std::string());
    if (labels_required || j.contains("entity_labels")) {
      s.entity_labels = j.at("entity_labels").get<std::vector<std::string>>();
    } else {
      s.entity_labels.assign(s.tokens.size(), std::string(kEntityLabels[kOutsideLabel]));
    }
    if (labels_required || j.contains("ade_labels")) {
      s.ade_labels = j.at("ade_labels").get<std::vector<int>>();
    } else {
      s.ade_labels.assign(s.tokens.size(), 0);
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("sample JSON missing or mistyped field: ") + e.what());
  }
  if (!labels_required) {
    // Unlabelled input only needs consistent lengths and a valid drug span.
    if (s.pos.size() != s.tokens.size() || s.entity_labels.size() != s.tokens.size() ||
        s.ade_labels.size() != s.tokens.size() || s.tokens.empty() ||
        s.drug_begin >= s.drug_end || s.drug_end > s.tokens.size()) {
      throw DataError("sample " + s.id + ": inconsistent fields");
    }
  } else {
    validate_sample(s);
  }
  return s;
}

void write_samples(const std::string& path, const std::vector<Sample>& samples) {
  std::string out;
  for (const auto& s : samples) {
    out += sample_to_json(s);
    out += '\n';
  }
  write_file(path, out);
}

std::vector<Sample> read_samples(const std::string& path, bool labels_required) {
  std::vector<Sample> samples;
  const auto lines = read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].find_first_not_of(" \t") == std::string::npos) continue;
    try {
      samples.push_back(sample_from_json(lines[i], labels_required));
    } catch (const DataError& e) {
      throw DataError(path + ":" + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return samples;
}

}  // namespace adenet
