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
#include <optional>
#include <span>
#include <vector>

#include "dpca/eigencore.hpp"

namespace dpca {

using Labels = std::vector<std::int64_t>;

// m samples x D features, one sample per row, with optional integer tags used
// only for evaluation and plotting.
class DataMatrix {
 public:
  // Throws kInvalidInput on an empty matrix, non-finite values or a label
  // vector whose length differs from the row count.
  explicit DataMatrix(RowMatrix values, std::optional<Labels> labels = std::nullopt);

  Index samples() const noexcept { return values_.rows(); }
  Index features() const noexcept { return values_.cols(); }
  const RowMatrix& values() const noexcept { return values_; }
  const std::optional<Labels>& labels() const noexcept { return labels_; }

 private:
  RowMatrix values_;
  std::optional<Labels> labels_;
};

struct CenteredDataset {
  DataMatrix data;
  Vector mean;
};

struct CovarianceEstimate {
  SymMatrix matrix;
  Index sample_count = 0;
  double ridge_applied = 0.0;
  Vector mean;  // mean removed from the samples (zero for externally supplied matrices)
};

CenteredDataset center(const DataMatrix& raw);

// C = (1/m) X^T X + ridge I over the centered rows.
CovarianceEstimate sample_covariance(const CenteredDataset& centered, double ridge = 0.0);

// Stacks several sample sets sharing a feature count into one. Labels are kept
// only when every part has them.
DataMatrix concat_rows(std::span<const DataMatrix> parts);

}  // namespace dpca
