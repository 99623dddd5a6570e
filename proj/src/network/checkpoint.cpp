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

#include "network/checkpoint.h"

#include <bit>
#include <cstdint>
#include <filesystem>

#include "util/error.h"
#include "util/hash.h"
#include "util/io.h"

namespace adenet {

namespace {

constexpr int kFormatVersion = 1;

std::string join(const std::string& dir, const char* name) {
  return (std::filesystem::path(dir) / name).string();
}

void check_layout(const nlohmann::json& manifest, const ParamStore& params,
                  std::size_t blob_size) {
  const auto& tensors = manifest.at("tensors");
  if (tensors.size() != params.size()) {
    throw DataError("checkpoint holds " + std::to_string(tensors.size()) +
                    " tensors, model expects " + std::to_string(params.size()));
  }
  std::size_t offset = 0;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const auto& t = tensors[i];
    const Parameter& p = params[i];
    const auto name = t.at("name").get<std::string>();
    const auto shape = t.at("shape").get<Shape>();
    if (name != p.name) {
      throw DataError("checkpoint tensor " + std::to_string(i) + " is '" + name +
                      "', model expects '" + p.name + "'");
    }
    if (shape != p.value.shape()) {
      throw DataError("checkpoint tensor '" + name + "' has shape " + shape_string(shape) +
                      ", model expects " + shape_string(p.value.shape()));
    }
    if (t.at("offset").get<std::size_t>() != offset) {
      throw DataError("checkpoint tensor '" + name + "' has an inconsistent offset");
    }
    offset += p.value.size() * sizeof(double);
  }
  if (offset != blob_size) {
    throw DataError("checkpoint blob is " + std::to_string(blob_size) + " bytes, expected " +
                    std::to_string(offset));
  }
}

}  // namespace

std::string encode_blob(const ParamStore& params) {
  std::string out;
  out.reserve(params.scalar_count() * sizeof(double));
  for (const auto& p : params) {
    for (double v : p.value.data()) {
      auto bits = std::bit_cast<std::uint64_t>(v);
      for (int b = 0; b < 8; ++b) {
        out.push_back(static_cast<char>(bits & 0xFFu));
        bits >>= 8;
      }
    }
  }
  return out;
}

void decode_blob(const std::string& blob, ParamStore& params) {
  if (blob.size() != params.scalar_count() * sizeof(double)) {
    throw DataError("checkpoint blob size does not match the parameter count");
  }
  std::size_t pos = 0;
  for (auto& p : params) {
    for (double& v : p.value.data()) {
      std::uint64_t bits = 0;
      for (int b = 7; b >= 0; --b) {
        bits = (bits << 8) | static_cast<unsigned char>(blob[pos + static_cast<std::size_t>(b)]);
      }
      v = std::bit_cast<double>(bits);
      pos += 8;
    }
  }
}

void save_checkpoint(const Model& model, const std::string& dir,
                     const nlohmann::ordered_json& extra) {
  ensure_directory(dir);
  const std::string blob = encode_blob(model.params());
  nlohmann::ordered_json m;
  m["format"] = "adenet-checkpoint";
  m["version"] = kFormatVersion;
  m["blob"] = kCheckpointBlob;
  m["byte_order"] = "little";
  m["dtype"] = "float64";
  m["blob_bytes"] = blob.size();
  Fnv1a h;
  h.update(blob);
  m["blob_digest"] = "fnv1a64:" + hex64(h.digest());
  m["config"] = model.config().to_json();
  m["vocab_hash"] = model.vocab().hash_hex();
  m["vocab"] = model.vocab().to_json();
  auto tensors = nlohmann::ordered_json::array();
  std::size_t offset = 0;
  for (const auto& p : model.params()) {
    nlohmann::ordered_json t;
    t["name"] = p.name;
    t["shape"] = p.value.shape();
    t["offset"] = offset;
    t["trainable"] = p.trainable;
    tensors.push_back(std::move(t));
    offset += p.value.size() * sizeof(double);
  }
  m["tensors"] = std::move(tensors);
  if (!extra.is_null()) m["extra"] = extra;
  write_file(join(dir, kCheckpointBlob), blob);
  write_file(join(dir, kCheckpointManifest), m.dump(2) + "\n");
}

namespace {

nlohmann::json read_manifest(const std::string& dir) {
  const std::string path = join(dir, kCheckpointManifest);
  nlohmann::json m;
  try {
    m = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path + ": " + e.what());
  }
  if (m.value("format", "") != "adenet-checkpoint" || m.value("version", 0) != kFormatVersion) {
    throw DataError(path + ": not a supported checkpoint manifest");
  }
  return m;
}

void fill_from(Model& model, const nlohmann::json& m, const std::string& dir) {
  const std::string expected = m.at("vocab_hash").get<std::string>();
  if (expected != model.vocab().hash_hex()) {
    throw DataError("checkpoint vocabulary hash " + expected + " does not match model vocabulary " +
                    model.vocab().hash_hex());
  }
  const std::string blob = read_file(join(dir, kCheckpointBlob));
  check_layout(m, model.params(), blob.size());
  decode_blob(blob, model.params());
}

}  // namespace

std::unique_ptr<Model> load_checkpoint(const std::string& dir) {
  const nlohmann::json m = read_manifest(dir);
  try {
    Vocab vocab = Vocab::from_json(m.at("vocab"));
    if (vocab.hash_hex() != m.at("vocab_hash").get<std::string>()) {
      throw DataError("checkpoint vocabulary does not match its recorded hash");
    }
    auto model = std::make_unique<Model>(ModelConfig::from_json(m.at("config")), std::move(vocab));
    fill_from(*model, m, dir);
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(join(dir, kCheckpointManifest) + ": " + e.what());
  }
}

void load_checkpoint_into(Model& model, const std::string& dir) {
  const nlohmann::json m = read_manifest(dir);
  try {
    fill_from(model, m, dir);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(join(dir, kCheckpointManifest) + ": " + e.what());
  }
}

}  // namespace adenet
