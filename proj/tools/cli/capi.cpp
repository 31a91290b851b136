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

#include "capi.hpp"

namespace dpca::cli {

int exit_code_for(dpca_status status) noexcept {
  switch (status) {
    case DPCA_OK: return kExitOk;
    case DPCA_ERR_SELECTION:
    case DPCA_ERR_WRONG_METHOD: return kExitUsage;
    case DPCA_ERR_NULL_ARGUMENT:
    case DPCA_ERR_INVALID_INPUT:
    case DPCA_ERR_SYMMETRY:
    case DPCA_ERR_DIMENSION:
    case DPCA_ERR_IO:
    case DPCA_ERR_PARSE: return kExitData;
    case DPCA_ERR_RANK_ZERO:
    case DPCA_ERR_NON_CONVERGENCE: return kExitNumerical;
    case DPCA_ERR_INTERNAL: return kExitInternal;
  }
  return kExitInternal;
}

void check(dpca_status status) {
  if (status == DPCA_OK) return;
  std::string message = dpca_last_error();
  if (message.empty()) message = dpca_status_string(status);
  throw CliError(exit_code_for(status), message);
}

std::vector<double> values_of(const dpca_data* data) {
  std::vector<double> out(dpca_data_rows(data) * dpca_data_cols(data));
  check(dpca_data_values(data, out.data(), out.size()));
  return out;
}

std::vector<double> eigenvalues_of(const dpca_model* model) {
  std::vector<double> out(dpca_model_count(model));
  check(dpca_model_eigenvalues(model, out.data(), out.size()));
  return out;
}

}  // namespace dpca::cli
