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

#ifndef ADENET_NETWORK_CHECKPOINT_H_
#define ADENET_NETWORK_CHECKPOINT_H_

#include <memory>
#include <string>

#include <json.hpp>

#include "network/model.h"

namespace adenet {

inline constexpr const char* kCheckpointManifest = "model.json";
inline constexpr const char* kCheckpointBlob = "model.bin";

// Writes <dir>/model.json and <dir>/model.bin. The manifest lists every
// tensor with its shape and byte offset into the blob, echoes the model
// configuration and carries the vocabulary with its hash. Nothing
// time-dependent is written, so equal parameters give equal bytes. `extra`
// (if not null) is stored under "extra".
void save_checkpoint(const Model& model, const std::string& dir,
                     const nlohmann::ordered_json& extra = nullptr);

// Rebuilds the model from a checkpoint directory.
std::unique_ptr<Model> load_checkpoint(const std::string& dir);

// Loads tensors into an existing model; throws DataError when the vocabulary
// hash or any tensor name/shape differs.
void load_checkpoint_into(Model& model, const std::string& dir);

// Encodes/decodes the tensor blob as little-endian IEEE-754 doubles.
std::string encode_blob(const ParamStore& params);
void decode_blob(const std::string& blob, ParamStore& params);

}  // namespace adenet

#endif  // ADENET_NETWORK_CHECKPOINT_H_
