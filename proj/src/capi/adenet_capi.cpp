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

#include "adenet/adenet.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "app/commands.h"
#include "check/gradsuite.h"
#include "network/checkpoint.h"
#include "util/error.h"
#include "util/io.h"

struct adenet_config {
  adenet::TrainConfig config;
};

struct adenet_model {
  std::unique_ptr<adenet::Model> model;
  std::string dir;
};

namespace {

thread_local std::string g_last_error;

adenet_status status_of(adenet::ErrorKind kind) {
  switch (kind) {
    case adenet::ErrorKind::kUsage:
      return ADENET_ERR_USAGE;
    case adenet::ErrorKind::kData:
    case adenet::ErrorKind::kDimension:
      return ADENET_ERR_DATA;
    case adenet::ErrorKind::kDivergence:
      return ADENET_ERR_DIVERGENCE;
    default:
      return ADENET_ERR_INTERNAL;
  }
}

template <typename F>
adenet_status guarded(F&& body) {
  g_last_error.clear();
  try {
    return body();
  } catch (const adenet::Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return ADENET_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ADENET_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return ADENET_ERR_INTERNAL;
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_out(char** out, const std::string& s) {
  if (out != nullptr) *out = copy_string(s);
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw adenet::UsageError(std::string(what) + " must not be NULL");
}

}  // namespace

extern "C" {

const char* adenet_version(void) { return adenet::kEngineVersion; }

const char* adenet_last_error(void) { return g_last_error.c_str(); }

void adenet_string_free(char* s) { std::free(s); }

adenet_status adenet_config_new(adenet_config** out) {
  return guarded([&] {
    require(out, "out");
    *out = new adenet_config();
    return ADENET_OK;
  });
}

adenet_status adenet_config_load(const char* path, adenet_config** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    auto c = std::make_unique<adenet_config>();
    c->config = adenet::TrainConfig::load(path);
    *out = c.release();
    return ADENET_OK;
  });
}

adenet_status adenet_config_set(adenet_config* config, const char* key, const char* value) {
  return guarded([&] {
    require(config, "config");
    require(key, "key");
    require(value, "value");
    config->config.set(key, value);
    return ADENET_OK;
  });
}

adenet_status adenet_config_get(const adenet_config* config, const char* key, char** value) {
  return guarded([&] {
    require(config, "config");
    require(key, "key");
    require(value, "value");
    *value = copy_string(config->config.get(key));
    return ADENET_OK;
  });
}

adenet_status adenet_config_json(const adenet_config* config, char** json) {
  return guarded([&] {
    require(config, "config");
    require(json, "json");
    *json = copy_string(config->config.to_json().dump(2));
    return ADENET_OK;
  });
}

void adenet_config_free(adenet_config* config) { delete config; }

adenet_status adenet_convert(const char* raw_path, const char* out_dir, uint64_t seed,
                             char** stats_json) {
  return guarded([&] {
    require(raw_path, "raw_path");
    require(out_dir, "out_dir");
    const adenet::ConvertStats stats = adenet::run_convert(raw_path, out_dir, seed);
    set_out(stats_json, adenet::stats_to_json(stats));
    return stats.rejected_lines > 0 ? ADENET_PARTIAL : ADENET_OK;
  });
}

adenet_status adenet_train(const adenet_config* config, char** summary_json) {
  return guarded([&] {
    require(config, "config");
    const adenet::TrainResult r = adenet::run_train(config->config);
    nlohmann::ordered_json j;
    j["best_epoch"] = r.best_epoch;
    j["best_score"] = r.best_score;
    j["epochs_run"] = r.history.size();
    j["early_stopped"] = r.early_stopped;
    auto history = nlohmann::ordered_json::array();
    for (const auto& e : r.history) history.push_back(e.to_json());
    j["history"] = std::move(history);
    set_out(summary_json, j.dump(2));
    return ADENET_OK;
  });
}

adenet_status adenet_model_load(const char* checkpoint_dir, adenet_model** out) {
  return guarded([&] {
    require(checkpoint_dir, "checkpoint_dir");
    require(out, "out");
    auto m = std::make_unique<adenet_model>();
    m->model = adenet::load_checkpoint(checkpoint_dir);
    m->dir = checkpoint_dir;
    *out = m.release();
    return ADENET_OK;
  });
}

void adenet_model_free(adenet_model* model) { delete model; }

adenet_status adenet_evaluate(const adenet_model* model, const char* dataset_path,
                              const char* report_path, size_t workers, char** report_json) {
  return guarded([&] {
    require(model, "model");
    require(dataset_path, "dataset_path");
    require(report_path, "report_path");
    const adenet::EvalReport r =
        adenet::run_evaluate(*model->model, model->dir, dataset_path, report_path, workers);
    set_out(report_json, r.to_json().dump(2));
    return ADENET_OK;
  });
}

adenet_status adenet_predict(const adenet_model* model, const char* in_path, const char* out_path,
                             size_t workers) {
  return guarded([&] {
    require(model, "model");
    require(in_path, "in_path");
    require(out_path, "out_path");
    adenet::run_predict(*model->model, model->dir, in_path, out_path, workers);
    return ADENET_OK;
  });
}

adenet_status adenet_export_attention(const adenet_model* model, const char* dataset_path,
                                      const char* sample_id, const char* format,
                                      const char* out_path) {
  return guarded([&] {
    require(model, "model");
    require(dataset_path, "dataset_path");
    require(sample_id, "sample_id");
    require(format, "format");
    require(out_path, "out_path");
    adenet::run_export_attention(*model->model, model->dir, dataset_path, sample_id, format,
                                 out_path);
    return ADENET_OK;
  });
}

adenet_status adenet_gradcheck(uint64_t seed, const char* report_path, int* passed,
                               char** table) {
  return guarded([&] {
    adenet::RunManifest manifest("gradcheck");
    manifest.set_seed(seed);
    const adenet::GradSuiteReport r = adenet::run_gradient_suite(seed);
    if (passed != nullptr) *passed = r.pass() ? 1 : 0;
    set_out(table, r.table());
    if (report_path != nullptr) {
      adenet::write_file(report_path, r.to_json().dump(2) + "\n");
      manifest.add_output(report_path);
      manifest.set_result({{"pass", r.pass()}});
      manifest.write(std::string(report_path) + ".manifest.json");
    }
    return ADENET_OK;
  });
}

adenet_status adenet_make_fixture(const char* out_dir, uint64_t seed) {
  return guarded([&] {
    require(out_dir, "out_dir");
    adenet::run_make_fixture(out_dir, seed);
    return ADENET_OK;
  });
}

}  // extern "C"
