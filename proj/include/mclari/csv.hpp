// Copyright 2026 The mclari-sim Authors
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

// Deterministic text output helpers. All numeric CSV fields go through
// fixed-precision formatting so repeated runs emit byte-identical files.

#ifndef MCLARI_CSV_HPP_
#define MCLARI_CSV_HPP_

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "mclari/errors.hpp"

namespace mclari {

inline std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

inline void write_text_file(const std::filesystem::path& path,
                            const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw ConfigError("cannot open " + path.string() + " for writing");
  }
  out << content;
  if (!out.flush()) {
    throw ConfigError("failed writing " + path.string());
  }
}

inline void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw ConfigError("cannot create output directory " + dir.string());
  }
}

}  // namespace mclari

#endif  // MCLARI_CSV_HPP_
