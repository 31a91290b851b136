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
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpca/dpca.h"

namespace dpca::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitNumerical = 4;

class CliError : public std::runtime_error {
 public:
  CliError(int exit_code, const std::string& what) : std::runtime_error(what), exit_code_(exit_code) {}
  int exit_code() const noexcept { return exit_code_; }

 private:
  int exit_code_;
};

int exit_code_for(dpca_status status) noexcept;

// Throws CliError carrying the library's last error message.
void check(dpca_status status);

struct HandleDeleter {
  void operator()(dpca_data* p) const noexcept { dpca_data_free(p); }
  void operator()(dpca_covariance* p) const noexcept { dpca_covariance_free(p); }
  void operator()(dpca_model* p) const noexcept { dpca_model_free(p); }
  void operator()(dpca_alpha_selection* p) const noexcept { dpca_alpha_selection_free(p); }
  void operator()(dpca_factor_spec* p) const noexcept { dpca_factor_spec_free(p); }
};

template <class T>
using Handle = std::unique_ptr<T, HandleDeleter>;

using DataHandle = Handle<dpca_data>;
using CovarianceHandle = Handle<dpca_covariance>;
using ModelHandle = Handle<dpca_model>;
using SelectionHandle = Handle<dpca_alpha_selection>;
using SpecHandle = Handle<dpca_factor_spec>;

std::vector<double> values_of(const dpca_data* data);
std::vector<double> eigenvalues_of(const dpca_model* model);

}  // namespace dpca::cli
