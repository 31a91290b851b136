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

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "dpca/methods.hpp"
#include "dpca/synthgen.hpp"

namespace dpca {

inline constexpr int kModelFormatVersion = 1;

// On-disk model: the fitted projection plus the preprocessing and provenance
// needed to apply it to new data.
struct ModelFile {
  ComponentModel model;
  std::optional<Vector> feature_scale;  // per-feature divisor applied before centering
  std::map<std::string, std::string> provenance;
};

// JSON text. Doubles are written in shortest round-trip form, so loading a
// saved model reproduces every numeric field bit for bit.
std::string model_to_json(const ModelFile& file);
ModelFile model_from_json(const std::string& text);

void save_model(const ModelFile& file, const std::filesystem::path& path);
ModelFile load_model(const std::filesystem::path& path);

std::string spec_to_json(const FactorModelSpec& spec);
FactorModelSpec spec_from_json(const std::string& text);

void save_spec(const FactorModelSpec& spec, const std::filesystem::path& path);
FactorModelSpec load_spec(const std::filesystem::path& path);

}  // namespace dpca
