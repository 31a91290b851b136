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

#include "csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "capi.hpp"

namespace dpca::cli {
namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  std::string out(s.substr(b, e - b));
  if (out.size() >= 2 && out.front() == '"' && out.back() == '"') out = out.substr(1, out.size() - 2);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(trim(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

bool parse_double(const std::string& cell, double& out) {
  if (cell.empty()) return false;
  const char* first = cell.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, cell.data() + cell.size(), out);
  return ec == std::errc() && ptr == cell.data() + cell.size();
}

bool parse_int(const std::string& cell, std::int64_t& out) {
  if (cell.empty()) return false;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
  return ec == std::errc() && ptr == cell.data() + cell.size();
}

[[noreturn]] void data_error(const std::string& source, std::size_t line, const std::string& what) {
  std::ostringstream msg;
  msg << source << ":" << line << ": " << what;
  throw CliError(kExitData, msg.str());
}

}  // namespace

CsvTable parse_csv(const std::string& text, const std::string& source) {
  std::vector<std::pair<std::size_t, std::vector<std::string>>> lines;
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (number == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (trim(line).empty()) continue;
    lines.emplace_back(number, split(line));
  }
  if (lines.empty()) throw CliError(kExitData, source + ": no rows");

  CsvTable table;
  std::size_t first = 0;
  const auto& head = lines.front().second;
  for (const std::string& cell : head) {
    double ignored = 0.0;
    if (!parse_double(cell, ignored)) {
      table.header = head;
      first = 1;
      break;
    }
  }

  const std::size_t width = head.size();
  std::ptrdiff_t label_col = -1;
  for (std::size_t j = 0; j < table.header.size(); ++j) {
    if (table.header[j] == "label") {
      if (label_col >= 0) data_error(source, lines.front().first, "duplicate label column");
      label_col = static_cast<std::ptrdiff_t>(j);
    }
  }
  table.cols = width - (label_col >= 0 ? 1 : 0);
  table.rows = lines.size() - first;
  if (table.rows == 0) throw CliError(kExitData, source + ": header but no data rows");
  if (table.cols == 0) throw CliError(kExitData, source + ": no feature columns");
  table.values.reserve(table.rows * table.cols);
  if (label_col >= 0) table.labels.emplace().reserve(table.rows);

  for (std::size_t r = first; r < lines.size(); ++r) {
    const auto& [line_no, cells] = lines[r];
    if (cells.size() != width) {
      std::ostringstream msg;
      msg << "expected " << width << " fields, found " << cells.size();
      data_error(source, line_no, msg.str());
    }
    for (std::size_t j = 0; j < width; ++j) {
      if (static_cast<std::ptrdiff_t>(j) == label_col) {
        std::int64_t label = 0;
        if (!parse_int(cells[j], label)) data_error(source, line_no, "label '" + cells[j] + "' is not an integer");
        table.labels->push_back(label);
        continue;
      }
      double value = 0.0;
      if (!parse_double(cells[j], value) || !std::isfinite(value)) {
        data_error(source, line_no, "'" + cells[j] + "' is not a finite number");
      }
      table.values.push_back(value);
    }
  }
  if (label_col >= 0) table.header.erase(table.header.begin() + label_col);
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError(kExitData, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str(), path.string());
}

std::string format_csv(const std::vector<std::string>& header, const std::vector<double>& values,
                       std::size_t rows, std::size_t cols,
                       const std::optional<std::vector<std::int64_t>>& labels) {
  std::string out;
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (j) out += ',';
    out += header[j];
  }
  if (!header.empty()) {
    if (labels) out += ",label";
    out += '\n';
  }
  char buf[40];
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (j) out += ',';
      std::snprintf(buf, sizeof buf, "%.17g", values[i * cols + j]);
      out += buf;
    }
    if (labels) {
      out += ',';
      out += std::to_string((*labels)[i]);
    }
    out += '\n';
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CliError(kExitData, "cannot write " + path.string());
  out << text;
  if (!out) throw CliError(kExitData, "write failed for " + path.string());
}

}  // namespace dpca::cli
