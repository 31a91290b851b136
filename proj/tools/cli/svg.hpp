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

#include <string>

#include "csv.hpp"

namespace dpca::cli {

// 2-D scatter of the first two columns, one fill color per label with a
// legend. Output depends only on the table contents.
std::string render_scatter_svg(const CsvTable& embedding, const std::string& title = "");

}  // namespace dpca::cli
