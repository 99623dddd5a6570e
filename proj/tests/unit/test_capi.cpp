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

// Exercises the shared library through its public header only.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include <doctest.h>

#include "adenet/adenet.h"

namespace {

const std::string kWork = "capi_work";

std::string take(char* s) {
  std::string out = s ? s : "";
  adenet_string_free(s);
  return out;
}

bool exists(const std::string& p) { return std::filesystem::exists(p); }

}  // namespace

TEST_CASE("version and null handling") {
  CHECK(std::string(adenet_version()) == "0.1.0");
  adenet_config* c = nullptr;
  CHECK(adenet_config_set(nullptr, "hidden", "4") == ADENET_ERR_USAGE);
  CHECK(std::strlen(adenet_last_error()) > 0);
  CHECK(adenet_config_new(nullptr) == ADENET_ERR_USAGE);
  CHECK(adenet_config_new(&c) == ADENET_OK);
  adenet_config_free(c);
  adenet_config_free(nullptr);
  adenet_model_free(nullptr);
  adenet_string_free(nullptr);
}

TEST_CASE("config set, get and errors") {
  adenet_config* c = nullptr;
  REQUIRE(adenet_config_new(&c) == ADENET_OK);
  CHECK(adenet_config_set(c, "hidden", "7") == ADENET_OK);
  char* v = nullptr;
  REQUIRE(adenet_config_get(c, "hidden", &v) == ADENET_OK);
  CHECK(take(v) == "7");
  CHECK(adenet_config_set(c, "no_such_key", "1") == ADENET_ERR_USAGE);
  CHECK(std::string(adenet_last_error()).find("no_such_key") != std::string::npos);
  CHECK(adenet_config_set(c, "hidden", "x") == ADENET_ERR_USAGE);
  char* json = nullptr;
  REQUIRE(adenet_config_json(c, &json) == ADENET_OK);
  CHECK(take(json).find("\"hidden\"") != std::string::npos);
  adenet_config_free(c);
  adenet_config* missing = nullptr;
  CHECK(adenet_config_load("capi_work/none.cfg", &missing) == ADENET_ERR_USAGE);
  CHECK(missing == nullptr);
}

TEST_CASE("fixture, convert, train, evaluate, predict and export") {
  std::filesystem::remove_all(kWork);
  REQUIRE(adenet_make_fixture((kWork + "/fx").c_str(), 20260415) == ADENET_OK);

  char* stats = nullptr;
  CHECK(adenet_convert((kWork + "/fx/raw.txt").c_str(), (kWork + "/conv").c_str(), 1, &stats) ==
        ADENET_OK);
  CHECK(take(stats).find("\"records\"") != std::string::npos);
  {
    std::ofstream raw(kWork + "/fx/raw.txt", std::ios::app);
    raw << "too|few|fields\n";
  }
  CHECK(adenet_convert((kWork + "/fx/raw.txt").c_str(), (kWork + "/conv2").c_str(), 1, nullptr) ==
        ADENET_PARTIAL);
  CHECK(adenet_convert("capi_work/nope.txt", (kWork + "/conv3").c_str(), 1, nullptr) ==
        ADENET_ERR_DATA);

  adenet_config* c = nullptr;
  REQUIRE(adenet_config_new(&c) == ADENET_OK);
  const char* settings[][2] = {{"word_dim", "4"}, {"char_dim", "3"}, {"char_widths", "1,2"},
                               {"char_filters_per_width", "2"}, {"pos_dim", "2"},
                               {"label_dim", "2"}, {"hidden", "4"}, {"combine_dim", "4"},
                               {"max_epochs", "2"}, {"learning_rate", "0.01"}};
  for (auto& kv : settings) REQUIRE(adenet_config_set(c, kv[0], kv[1]) == ADENET_OK);
  REQUIRE(adenet_config_set(c, "train_path", (kWork + "/fx/train.jsonl").c_str()) == ADENET_OK);
  REQUIRE(adenet_config_set(c, "val_path", (kWork + "/fx/val.jsonl").c_str()) == ADENET_OK);
  REQUIRE(adenet_config_set(c, "out_dir", (kWork + "/run").c_str()) == ADENET_OK);
  char* summary = nullptr;
  REQUIRE(adenet_train(c, &summary) == ADENET_OK);
  CHECK(take(summary).find("best_epoch") != std::string::npos);
  CHECK(exists(kWork + "/run/checkpoint/model.bin"));
  CHECK(exists(kWork + "/run/manifest.json"));

  adenet_config* bad = nullptr;
  REQUIRE(adenet_config_new(&bad) == ADENET_OK);
  CHECK(adenet_train(bad, nullptr) == ADENET_ERR_USAGE);
  adenet_config_free(bad);
  adenet_config_free(c);

  adenet_model* m = nullptr;
  CHECK(adenet_model_load("capi_work/missing", &m) == ADENET_ERR_DATA);
  REQUIRE(adenet_model_load((kWork + "/run/checkpoint").c_str(), &m) == ADENET_OK);
  char* report = nullptr;
  REQUIRE(adenet_evaluate(m, (kWork + "/fx/val.jsonl").c_str(), (kWork + "/report.json").c_str(), 2,
                          &report) == ADENET_OK);
  CHECK(take(report).find("\"er\"") != std::string::npos);
  CHECK(exists(kWork + "/report.json"));
  CHECK(adenet_predict(m, (kWork + "/fx/val.jsonl").c_str(), (kWork + "/pred.jsonl").c_str(), 1) ==
        ADENET_OK);
  CHECK(adenet_export_attention(m, (kWork + "/fx/val.jsonl").c_str(), "fx-heldout.0#0", "csv",
                                (kWork + "/att.csv").c_str()) == ADENET_OK);
  CHECK(adenet_export_attention(m, (kWork + "/fx/val.jsonl").c_str(), "fx-heldout.0#0", "gif",
                                (kWork + "/att.gif").c_str()) == ADENET_ERR_USAGE);
  CHECK(adenet_export_attention(m, (kWork + "/fx/val.jsonl").c_str(), "absent", "csv",
                                (kWork + "/att2.csv").c_str()) == ADENET_ERR_DATA);
  adenet_model_free(m);
}

TEST_CASE("gradient suite through the C API") {
  int passed = 0;
  char* table = nullptr;
  REQUIRE(adenet_gradcheck(7, "capi_work/gradcheck.json", &passed, &table) == ADENET_OK);
  CHECK(passed == 1);
  CHECK(take(table).find("end_to_end") != std::string::npos);
  CHECK(exists("capi_work/gradcheck.json"));
}
