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

#ifndef ADENET_DATA_FIXTURE_H_
#define ADENET_DATA_FIXTURE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "data/sample.h"

namespace adenet {

// Small synthetic drug/adverse-effect corpus built from sentence templates
// over two drugs and four effects (two of them two tokens long). Some
// templates mention both drugs as combination therapy, giving two samples
// per sentence. Fully determined by the seed.
struct Fixture {
  std::vector<Sample> train;
  std::vector<Sample> held_out;
};

inline constexpr std::uint64_t kDefaultFixtureSeed = 20260415;

Fixture make_fixture(std::size_t train_samples = 32, std::size_t held_out_samples = 8,
                     std::uint64_t seed = kDefaultFixtureSeed);

// Renders samples back into pipe-delimited relation lines (one per drug and
// effect span pair, with a PoS column), for exercising the converter.
std::vector<std::string> fixture_raw_lines(const std::vector<Sample>& samples);

}  // namespace adenet

#endif  // ADENET_DATA_FIXTURE_H_
