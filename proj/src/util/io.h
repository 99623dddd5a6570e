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

#ifndef ADENET_UTIL_IO_H_
#define ADENET_UTIL_IO_H_

#include <string>
#include <string_view>
#include <vector>

namespace adenet {

std::string read_file(const std::string& path);
std::vector<std::string> read_lines(const std::string& path);
// Creates missing parent directories.
void write_file(const std::string& path, std::string_view contents);

// Creates the directory (and parents) if missing.
void ensure_directory(const std::string& path);

// Plain log line on stderr, prefixed with the severity tag.
void log_info(const std::string& message);
void log_warning(const std::string& message);

}  // namespace adenet

#endif  // ADENET_UTIL_IO_H_
