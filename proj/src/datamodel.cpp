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

#include "dpca/datamodel.hpp"

#include <cmath>
#include <sstream>

namespace dpca {

DataMatrix::DataMatrix(RowMatrix values, std::optional<Labels> labels)
    : values_(std::move(values)), labels_(std::move(labels)) {
  if (values_.rows() < 1 || values_.cols() < 1) {
    throw Error(ErrorCode::kInvalidInput, "data matrix needs at least one sample and one feature");
  }
  if (!values_.allFinite()) throw Error(ErrorCode::kInvalidInput, "data matrix has non-finite values");
  if (labels_ && static_cast<Index>(labels_->size()) != values_.rows()) {
    std::ostringstream msg;
    msg << "label count " << labels_->size() << " does not match sample count " << values_.rows();
    throw Error(ErrorCode::kInvalidInput, msg.str());
  }
}

CenteredDataset center(const DataMatrix& raw) {
  const RowMatrix& x = raw.values();
  Vector mean = Vector::Zero(x.cols());
  for (Index i = 0; i < x.rows(); ++i) mean += x.row(i).transpose();
  mean /= static_cast<double>(x.rows());
  RowMatrix centered = x.rowwise() - mean.transpose();
  return CenteredDataset{DataMatrix(std::move(centered), raw.labels()), std::move(mean)};
}

CovarianceEstimate sample_covariance(const CenteredDataset& centered, double ridge) {
  if (!(ridge >= 0.0) || !std::isfinite(ridge)) {
    throw Error(ErrorCode::kInvalidInput, "ridge must be a finite nonnegative number");
  }
  const RowMatrix& x = centered.data.values();
  const Index dim = x.cols();
  const double m = static_cast<double>(x.rows());

  Matrix c = Matrix::Zero(dim, dim);
  c.selfadjointView<Eigen::Lower>().rankUpdate(x.transpose(), 1.0 / m);
  c.triangularView<Eigen::StrictlyUpper>() = c.transpose();
  c.diagonal().array() += ridge;
  return CovarianceEstimate{SymMatrix(std::move(c)), x.rows(), ridge, centered.mean};
}

DataMatrix concat_rows(std::span<const DataMatrix> parts) {
  if (parts.empty()) throw Error(ErrorCode::kInvalidInput, "nothing to concatenate");
  const Index dim = parts.front().features();
  Index rows = 0;
  bool all_labeled = true;
  for (const DataMatrix& p : parts) {
    if (p.features() != dim) {
      std::ostringstream msg;
      msg << "feature count mismatch: " << p.features() << " vs " << dim;
      throw Error(ErrorCode::kDimension, msg.str());
    }
    rows += p.samples();
    all_labeled = all_labeled && p.labels().has_value();
  }
  RowMatrix stacked(rows, dim);
  Labels labels;
  Index offset = 0;
  for (const DataMatrix& p : parts) {
    stacked.middleRows(offset, p.samples()) = p.values();
    offset += p.samples();
    if (all_labeled) labels.insert(labels.end(), p.labels()->begin(), p.labels()->end());
  }
  if (all_labeled) return DataMatrix(std::move(stacked), std::move(labels));
  return DataMatrix(std::move(stacked));
}

}  // namespace dpca
