/* Copyright 2026 The adenet Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef ADENET_ADENET_H_
#define ADENET_ADENET_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ADENET_API __declspec(dllexport)
#else
#define ADENET_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as process exit codes for the command-line tool. */
typedef enum adenet_status {
  ADENET_OK = 0,
  ADENET_ERR_USAGE = 1,      /* bad arguments or configuration */
  ADENET_ERR_DATA = 2,       /* unreadable or malformed input */
  ADENET_ERR_DIVERGENCE = 3, /* non-finite loss or gradient */
  ADENET_PARTIAL = 4,        /* completed, but some input lines were rejected */
  ADENET_ERR_INTERNAL = 5
} adenet_status;

typedef struct adenet_config adenet_config;
typedef struct adenet_model adenet_model;

ADENET_API const char* adenet_version(void);

/* Message of the last failed call on this thread; "" if none. */
ADENET_API const char* adenet_last_error(void);

/* Strings returned through char** out-parameters are released here. */
ADENET_API void adenet_string_free(char* s);

/* Training configuration: defaults, then an optional key = value file, then
 * individual overrides. Unknown keys are rejected. */
ADENET_API adenet_status adenet_config_new(adenet_config** out);
ADENET_API adenet_status adenet_config_load(const char* path, adenet_config** out);
ADENET_API adenet_status adenet_config_set(adenet_config* config, const char* key,
                                           const char* value);
ADENET_API adenet_status adenet_config_get(const adenet_config* config, const char* key,
                                           char** value);
/* Full configuration as a JSON object. */
ADENET_API adenet_status adenet_config_json(const adenet_config* config, char** json);
ADENET_API void adenet_config_free(adenet_config* config);

/* Raw relation file -> train/val/test JSONL, rejects, stats and manifest in
 * out_dir. Returns ADENET_PARTIAL when lines were rejected. stats_json may
 * be NULL. */
ADENET_API adenet_status adenet_convert(const char* raw_path, const char* out_dir, uint64_t seed,
                                        char** stats_json);

/* Trains per the configuration (train_path, val_path, out_dir). Writes
 * out_dir/checkpoint/, out_dir/history.jsonl and out_dir/manifest.json.
 * summary_json may be NULL. */
ADENET_API adenet_status adenet_train(const adenet_config* config, char** summary_json);

ADENET_API adenet_status adenet_model_load(const char* checkpoint_dir, adenet_model** out);
ADENET_API void adenet_model_free(adenet_model* model);

/* workers == 0 uses ADENET_WORKERS or 1. report_json may be NULL. */
ADENET_API adenet_status adenet_evaluate(const adenet_model* model, const char* dataset_path,
                                         const char* report_path, size_t workers,
                                         char** report_json);
ADENET_API adenet_status adenet_predict(const adenet_model* model, const char* in_path,
                                        const char* out_path, size_t workers);
/* format: "csv" or "ppm". */
ADENET_API adenet_status adenet_export_attention(const adenet_model* model,
                                                 const char* dataset_path,
                                                 const char* sample_id, const char* format,
                                                 const char* out_path);

/* Finite-difference gradient suite on a tiny model. *passed is set to 1
 * when every row is within tolerance. report_path and table may be NULL. */
ADENET_API adenet_status adenet_gradcheck(uint64_t seed, const char* report_path, int* passed,
                                          char** table);

/* Synthetic corpus (train.jsonl, val.jsonl, raw.txt) for smoke runs. */
ADENET_API adenet_status adenet_make_fixture(const char* out_dir, uint64_t seed);

#ifdef __cplusplus
}
#endif

#endif /* ADENET_ADENET_H_ */
