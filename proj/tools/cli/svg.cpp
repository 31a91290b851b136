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

#include "svg.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>

#include "capi.hpp"

namespace dpca::cli {
namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr std::array<const char*, 10> kPalette = {
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
};

std::string fmt(const char* pattern, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, a);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo;
  double hi;
  double map(double v, double out_lo, double out_hi) const {
    return out_lo + (v - lo) / (hi - lo) * (out_hi - out_lo);
  }
};

Range padded_range(const CsvTable& t, std::size_t col) {
  double lo = t.values[col];
  double hi = lo;
  for (std::size_t i = 0; i < t.rows; ++i) {
    lo = std::min(lo, t.values[i * t.cols + col]);
    hi = std::max(hi, t.values[i * t.cols + col]);
  }
  const double pad = hi > lo ? 0.05 * (hi - lo) : 1.0;
  return {lo - pad, hi + pad};
}

}  // namespace

std::string render_scatter_svg(const CsvTable& embedding, const std::string& title) {
  if (embedding.cols < 2) {
    throw CliError(kExitUsage, "plot needs an embedding with at least two component columns");
  }
  const Range xr = padded_range(embedding, 0);
  const Range yr = padded_range(embedding, 1);
  const double x0 = kLeft;
  const double x1 = kWidth - kRight;
  const double y0 = kHeight - kBottom;
  const double y1 = kTop;

  std::map<std::int64_t, std::size_t> colors;
  if (embedding.labels) {
    for (std::int64_t l : *embedding.labels) colors.emplace(l, 0);
    std::size_t next = 0;
    for (auto& [label, index] : colors) index = next++ % kPalette.size();
  }

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"640\" height=\"480\" "
         "viewBox=\"0 0 640 480\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" fill=\"#ffffff\"/>\n";
  if (!title.empty()) {
    svg += "<text x=\"" + fmt("%.1f", (x0 + x1) / 2) + "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">" + escape(title) + "</text>\n";
  }
  svg += "<g stroke=\"#000000\" stroke-width=\"1\">\n";
  svg += "<line x1=\"" + fmt("%.1f", x0) + "\" y1=\"" + fmt("%.1f", y0) + "\" x2=\"" + fmt("%.1f", x1) +
         "\" y2=\"" + fmt("%.1f", y0) + "\"/>\n";
  svg += "<line x1=\"" + fmt("%.1f", x0) + "\" y1=\"" + fmt("%.1f", y0) + "\" x2=\"" + fmt("%.1f", x0) +
         "\" y2=\"" + fmt("%.1f", y1) + "\"/>\n";
  svg += "</g>\n";

  // Tick labels at the axis ends.
  svg += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\">\n";
  svg += "<text x=\"" + fmt("%.1f", x0) + "\" y=\"" + fmt("%.1f", y0 + 16) + "\" text-anchor=\"start\">" +
         fmt("%.3g", xr.lo) + "</text>\n";
  svg += "<text x=\"" + fmt("%.1f", x1) + "\" y=\"" + fmt("%.1f", y0 + 16) + "\" text-anchor=\"end\">" +
         fmt("%.3g", xr.hi) + "</text>\n";
  svg += "<text x=\"" + fmt("%.1f", x0 - 6) + "\" y=\"" + fmt("%.1f", y0) + "\" text-anchor=\"end\">" +
         fmt("%.3g", yr.lo) + "</text>\n";
  svg += "<text x=\"" + fmt("%.1f", x0 - 6) + "\" y=\"" + fmt("%.1f", y1 + 10) + "\" text-anchor=\"end\">" +
         fmt("%.3g", yr.hi) + "</text>\n";
  svg += "</g>\n";

  svg += "<g font-family=\"sans-serif\" font-size=\"13\">\n";
  svg += "<text x=\"" + fmt("%.1f", (x0 + x1) / 2) + "\" y=\"" + fmt("%.1f", kHeight - 18) +
         "\" text-anchor=\"middle\">component 1</text>\n";
  svg += "<text x=\"18\" y=\"" + fmt("%.1f", (y0 + y1) / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
         fmt("%.1f", (y0 + y1) / 2) + ")\">component 2</text>\n";
  svg += "</g>\n";

  svg += "<g fill-opacity=\"0.7\">\n";
  for (std::size_t i = 0; i < embedding.rows; ++i) {
    const double px = xr.map(embedding.values[i * embedding.cols], x0, x1);
    const double py = yr.map(embedding.values[i * embedding.cols + 1], y0, y1);
    const char* color = embedding.labels ? kPalette[colors.at((*embedding.labels)[i])] : kPalette[0];
    svg += "<circle cx=\"" + fmt("%.2f", px) + "\" cy=\"" + fmt("%.2f", py) + "\" r=\"3\" fill=\"" + color + "\"/>\n";
  }
  svg += "</g>\n";

  if (!colors.empty()) {
    svg += "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
    double y = kTop + 10;
    for (const auto& [label, index] : colors) {
      svg += "<rect x=\"" + fmt("%.1f", x1 + 20) + "\" y=\"" + fmt("%.1f", y - 9) +
             "\" width=\"10\" height=\"10\" fill=\"" + kPalette[index] + "\"/>\n";
      svg += "<text x=\"" + fmt("%.1f", x1 + 36) + "\" y=\"" + fmt("%.1f", y) + "\">label " +
             std::to_string(label) + "</text>\n";
      y += 18;
    }
    svg += "</g>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace dpca::cli
