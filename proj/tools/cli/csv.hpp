// Copyright 2026 The dpca Authors
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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace dpca::cli {

// One sample per row. `values` is row-major rows x cols and excludes the
// label column, which is recognized by the header name "label".
struct CsvTable {
  std::vector<std::string> header;  // empty when the file has no header row
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;
  std::optional<std::vector<std::int64_t>> labels;
};

// Throws CliError (data exit code) on unreadable, ragged or non-numeric input.
CsvTable parse_csv(const std::string& text, const std::string& source = "<memory>");
CsvTable read_csv(const std::filesystem::path& path);

// Values are written with 17 significant digits.
std::string format_csv(const std::vector<std::string>& header, const std::vector<double>& values,
                       std::size_t rows, std::size_t cols,
                       const std::optional<std::vector<std::int64_t>>& labels);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace dpca::cli
