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

// Command-line front end. Everything goes through the C API.

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "adenet/adenet.h"

namespace {

int fail(adenet_status s) {
  std::fprintf(stderr, "error: %s\n", adenet_last_error());
  return static_cast<int>(s);
}

// Owns a string handed out by the library.
struct Owned {
  char* p = nullptr;
  ~Owned() { adenet_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct ModelHandle {
  adenet_model* m = nullptr;
  ~ModelHandle() { adenet_model_free(m); }
};

struct ConfigHandle {
  adenet_config* c = nullptr;
  ~ConfigHandle() { adenet_config_free(c); }
};

void print_prf(const char* name, const nlohmann::json& j) {
  std::printf("%-8s P %6.2f  R %6.2f  F1 %6.2f\n", name, j.at("p").get<double>(),
              j.at("r").get<double>(), j.at("f1").get<double>());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint drug/disease tagging and adverse-effect extraction"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(adenet_version()));

  // convert
  std::string raw_path, out_dir;
  std::uint64_t seed = 1;
  auto* convert = app.add_subcommand("convert", "Raw relation file to split JSONL samples");
  convert->add_option("--raw", raw_path, "Pipe-delimited relation file")->required();
  convert->add_option("--out", out_dir, "Output directory")->required();
  convert->add_option("--seed", seed, "Split seed");

  // train
  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> train_seed;
  std::optional<std::size_t> train_workers;
  std::string train_path, val_path, train_out;
  auto* train = app.add_subcommand("train", "Train a model");
  train->add_option("--config", config_path, "Flat key = value configuration file");
  train->add_option("--set", overrides, "Override one key (key=value); repeatable");
  train->add_option("--seed", train_seed, "Overrides the configured seed");
  train->add_option("--workers", train_workers, "Worker threads per batch");
  train->add_option("--train", train_path, "Training JSONL (overrides train_path)");
  train->add_option("--val", val_path, "Validation JSONL (overrides val_path)");
  train->add_option("--out", train_out, "Output directory (overrides out_dir)");

  // evaluate
  std::string checkpoint, data_path, report_path;
  std::size_t workers = 0;
  auto* evaluate = app.add_subcommand("evaluate", "Score a checkpoint on a labelled set");
  evaluate->add_option("--checkpoint", checkpoint, "Checkpoint directory")->required();
  evaluate->add_option("--data", data_path, "Labelled JSONL")->required();
  evaluate->add_option("--report", report_path, "Report JSON path")->required();
  evaluate->add_option("--workers", workers, "Worker threads");

  // predict
  std::string in_path, out_path;
  auto* predict = app.add_subcommand("predict", "Tag samples with a checkpoint");
  predict->add_option("--checkpoint", checkpoint, "Checkpoint directory")->required();
  predict->add_option("--input", in_path, "Input JSONL")->required();
  predict->add_option("--output", out_path, "Output JSONL")->required();
  predict->add_option("--workers", workers, "Worker threads");

  // export-attention
  std::string sample_id, format = "csv";
  auto* attention = app.add_subcommand("export-attention", "Write one sample's attention matrix");
  attention->add_option("--checkpoint", checkpoint, "Checkpoint directory")->required();
  attention->add_option("--data", data_path, "JSONL holding the sample")->required();
  attention->add_option("--sample-id", sample_id, "Sample id")->required();
  attention->add_option("--format", format, "csv or ppm")->check(CLI::IsMember({"csv", "ppm"}));
  attention->add_option("--output", out_path, "Output file")->required();

  // gradcheck
  std::uint64_t gc_seed = 7;
  std::string gc_report;
  auto* gradcheck = app.add_subcommand("gradcheck", "Finite-difference gradient suite");
  gradcheck->add_option("--seed", gc_seed, "Seed");
  gradcheck->add_option("--report", gc_report, "Report JSON path");

  // make-fixture
  std::uint64_t fx_seed = 20260415;
  auto* fixture = app.add_subcommand("make-fixture", "Write the synthetic smoke corpus");
  fixture->add_option("--out", out_dir, "Output directory")->required();
  fixture->add_option("--seed", fx_seed, "Generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ADENET_ERR_USAGE;
  }

  if (convert->parsed()) {
    Owned stats;
    const adenet_status s = adenet_convert(raw_path.c_str(), out_dir.c_str(), seed, &stats.p);
    if (s != ADENET_OK && s != ADENET_PARTIAL) return fail(s);
    std::printf("%s\n", stats.str().c_str());
    if (s == ADENET_PARTIAL) {
      std::fprintf(stderr, "warning: some lines were rejected; see %s/rejects.tsv\n",
                   out_dir.c_str());
    }
    return s;
  }

  if (train->parsed()) {
    ConfigHandle cfg;
    adenet_status s = config_path.empty() ? adenet_config_new(&cfg.c)
                                          : adenet_config_load(config_path.c_str(), &cfg.c);
    if (s != ADENET_OK) return fail(s);
    auto set = [&](const std::string& k, const std::string& v) {
      return adenet_config_set(cfg.c, k.c_str(), v.c_str());
    };
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) {
        std::fprintf(stderr, "error: --set expects key=value, got '%s'\n", kv.c_str());
        return ADENET_ERR_USAGE;
      }
      if ((s = set(kv.substr(0, eq), kv.substr(eq + 1))) != ADENET_OK) return fail(s);
    }
    if (!train_path.empty() && (s = set("train_path", train_path)) != ADENET_OK) return fail(s);
    if (!val_path.empty() && (s = set("val_path", val_path)) != ADENET_OK) return fail(s);
    if (!train_out.empty() && (s = set("out_dir", train_out)) != ADENET_OK) return fail(s);
    if (train_seed && (s = set("seed", std::to_string(*train_seed))) != ADENET_OK) return fail(s);
    if (train_workers && (s = set("workers", std::to_string(*train_workers))) != ADENET_OK) {
      return fail(s);
    }
    Owned summary;
    if ((s = adenet_train(cfg.c, &summary.p)) != ADENET_OK) return fail(s);
    const auto j = nlohmann::json::parse(summary.str());
    std::printf("best epoch %zu, selection score %.2f\n", j.at("best_epoch").get<std::size_t>(),
                j.at("best_score").get<double>());
    return ADENET_OK;
  }

  if (evaluate->parsed() || predict->parsed() || attention->parsed()) {
    ModelHandle model;
    adenet_status s = adenet_model_load(checkpoint.c_str(), &model.m);
    if (s != ADENET_OK) return fail(s);
    if (evaluate->parsed()) {
      Owned report;
      s = adenet_evaluate(model.m, data_path.c_str(), report_path.c_str(), workers, &report.p);
      if (s != ADENET_OK) return fail(s);
      const auto j = nlohmann::json::parse(report.str());
      print_prf("ER", j.at("er"));
      print_prf("ADE", j.at("ade"));
      print_prf("ER span", j.at("er_span"));
      print_prf("ADE span", j.at("ade_span"));
      return ADENET_OK;
    }
    if (predict->parsed()) {
      s = adenet_predict(model.m, in_path.c_str(), out_path.c_str(), workers);
      return s == ADENET_OK ? ADENET_OK : fail(s);
    }
    s = adenet_export_attention(model.m, data_path.c_str(), sample_id.c_str(), format.c_str(),
                                out_path.c_str());
    return s == ADENET_OK ? ADENET_OK : fail(s);
  }

  if (gradcheck->parsed()) {
    int passed = 0;
    Owned table;
    const adenet_status s = adenet_gradcheck(
        gc_seed, gc_report.empty() ? nullptr : gc_report.c_str(), &passed, &table.p);
    if (s != ADENET_OK) return fail(s);
    std::printf("%s", table.str().c_str());
    std::printf("%s\n", passed ? "all rows within tolerance" : "gradient check FAILED");
    return passed ? ADENET_OK : ADENET_ERR_DIVERGENCE;
  }

  if (fixture->parsed()) {
    const adenet_status s = adenet_make_fixture(out_dir.c_str(), fx_seed);
    return s == ADENET_OK ? ADENET_OK : fail(s);
  }
  return ADENET_ERR_USAGE;
}
