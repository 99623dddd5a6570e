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

#include "eval/evaluator.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <thread>

#include "util/error.h"

namespace adenet {

namespace {

std::vector<std::size_t> gold_entity_ids(const Sample& s) {
  std::vector<std::size_t> ids;
  ids.reserve(s.size());
  for (const auto& l : s.entity_labels) ids.push_back(entity_label_id(l));
  return ids;
}

std::vector<std::size_t> as_ids(const std::vector<int>& flags) {
  return std::vector<std::size_t>(flags.begin(), flags.end());
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

nlohmann::ordered_json EvalReport::to_json() const {
  nlohmann::ordered_json j;
  j["samples"] = samples;
  j["tokens"] = tokens;
  j["er"] = er.to_json();
  j["ade"] = ade.to_json();
  j["er_span"] = er_span.to_json();
  j["ade_span"] = ade_span.to_json();
  j["histogram_bins"] = {{"er", er_histogram}, {"ade", ade_histogram}};
  j["pearson_r"] = pearson_r ? nlohmann::ordered_json(*pearson_r) : nlohmann::ordered_json();
  auto rows = nlohmann::ordered_json::array();
  for (const auto& s : per_sample) {
    rows.push_back({{"id", s.id}, {"er_f1", s.er_f1}, {"ade_f1", s.ade_f1}});
  }
  j["per_sample"] = std::move(rows);
  return j;
}

EvalReport score(const std::vector<Sample>& gold, const std::vector<ForwardTrace>& traces) {
  if (gold.size() != traces.size()) {
    throw DimensionError("score: " + std::to_string(gold.size()) + " samples but " +
                         std::to_string(traces.size()) + " predictions");
  }
  if (gold.empty()) throw DataError("cannot evaluate an empty dataset");
  EvalReport r;
  r.samples = gold.size();
  Counts er, ade, er_span, ade_span;
  std::vector<double> er_f1s, ade_f1s;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const Sample& s = gold[i];
    const ForwardTrace& tr = traces[i];
    const auto g_ent = gold_entity_ids(s);
    const auto g_ade = as_ids(s.ade_labels);
    const auto p_ade = as_ids(tr.predicted_ade);
    const Counts ce = token_counts(g_ent, tr.predicted_labels, entity_positive_set());
    const Counts ca = token_counts(g_ade, p_ade, ade_positive_set());
    er += ce;
    ade += ca;
    er_span += span_counts(bio_spans(g_ent), bio_spans(tr.predicted_labels));
    ade_span += span_counts(flag_spans(g_ade), flag_spans(p_ade));
    r.tokens += s.size();
    SampleScore row{s.id, prf_from_counts(ce).f1, prf_from_counts(ca).f1};
    er_f1s.push_back(row.er_f1);
    ade_f1s.push_back(row.ade_f1);
    r.per_sample.push_back(std::move(row));
  }
  r.er = prf_from_counts(er);
  r.ade = prf_from_counts(ade);
  r.er_span = prf_from_counts(er_span);
  r.ade_span = prf_from_counts(ade_span);
  r.er_histogram = decile_histogram(er_f1s);
  r.ade_histogram = decile_histogram(ade_f1s);
  r.pearson_r = pearson(er_f1s, ade_f1s);
  return r;
}

std::vector<ForwardTrace> predict_all(const Model& model, const std::vector<Sample>& samples,
                                      std::size_t workers) {
  std::vector<ForwardTrace> traces(samples.size());
  auto run = [&](std::size_t i) { traces[i] = model.predict(model.encode_sample(samples[i])); };
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(1, samples.size()));
  if (workers == 1) {
    for (std::size_t i = 0; i < samples.size(); ++i) run(i);
    return traces;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < samples.size(); i += workers) run(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return traces;
}

EvalReport evaluate(const Model& model, const std::vector<Sample>& samples, std::size_t workers) {
  if (samples.empty()) throw DataError("cannot evaluate an empty dataset");
  return score(samples, predict_all(model, samples, workers));
}

Sample apply_prediction(const Sample& sample, const ForwardTrace& trace) {
  Sample out = sample;
  for (std::size_t t = 0; t < out.size(); ++t) {
    out.entity_labels[t] = std::string(kEntityLabels[trace.predicted_labels[t]]);
    out.ade_labels[t] = trace.predicted_ade[t];
  }
  return out;
}

std::string attention_csv(const std::vector<std::string>& tokens, const Tensor& attention) {
  const std::size_t n = tokens.size();
  if (attention.rank() != 2 || attention.dim(0) != n || attention.dim(1) < n) {
    throw DimensionError("attention matrix " + shape_string(attention.shape()) + " does not fit " +
                         std::to_string(n) + " tokens");
  }
  std::string out;
  for (const auto& t : tokens) out += "," + csv_field(t);
  out += "\n";
  for (std::size_t i = 0; i < n; ++i) {
    out += csv_field(tokens[i]);
    for (std::size_t j = 0; j < n; ++j) out += "," + format_real(attention.at(i, j));
    out += "\n";
  }
  return out;
}

std::string attention_ppm(const Tensor& attention, std::size_t cell_px) {
  if (attention.rank() != 2 || cell_px == 0) throw DimensionError("attention image needs a matrix");
  const std::size_t rows = attention.dim(0), cols = attention.dim(1);
  const std::size_t w = cols * cell_px, h = rows * cell_px;
  std::string out = "P6\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
  out.reserve(out.size() + w * h * 3);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const double v = std::clamp(attention.at(y / cell_px, x / cell_px), 0.0, 1.0);
      // Linear ramp from white to (8, 48, 107).
      const auto mix = [v](double lo) {
        return static_cast<char>(static_cast<unsigned char>(std::lround(255.0 + (lo - 255.0) * v)));
      };
      out += mix(8.0);
      out += mix(48.0);
      out += mix(107.0);
    }
  }
  return out;
}

}  // namespace adenet
