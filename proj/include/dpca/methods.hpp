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
#include <string_view>
#include <vector>

#include "dpca/datamodel.hpp"

namespace dpca {

enum class Method { kPca, kCpca, kDpca };

const char* to_string(Method method) noexcept;
std::optional<Method> parse_method(std::string_view name) noexcept;

struct Regularization {
  double floor_rel = 0.0;
  bool floor_applied = false;
  double target_ridge = 0.0;
  double background_ridge = 0.0;
};

// A fitted projection. For dpca the columns are pencil eigenvectors, which are
// C_yy-orthogonal rather than mutually orthogonal unless `orthonormalized`.
struct ComponentModel {
  Method method = Method::kPca;
  Matrix components;  // D x d, unit-norm columns
  Vector eigenvalues;  // descending
  std::optional<double> alpha;  // cpca only
  Vector target_mean;
  std::optional<Vector> background_mean;
  Regularization regularization;
  bool orthonormalized = false;

  Index dim() const noexcept { return components.rows(); }
  Index count() const noexcept { return components.cols(); }
};

// Throws kInvalidInput when a model breaks its structural invariants (shape
// agreement, unit columns, descending eigenvalues, alpha iff cpca).
void validate(const ComponentModel& model);

struct EmbeddingResult {
  RowMatrix coordinates;  // m x d
  std::optional<Labels> labels;
};

struct AlphaSelection {
  std::vector<double> grid;
  Matrix affinity;  // |grid| x |grid|, symmetric, unit diagonal
  std::vector<int> cluster_assignment;  // per grid entry, clusters numbered by first appearance
  std::vector<Index> selected_indices;  // one medoid per cluster, in cluster order
  std::vector<double> selected;
};

struct DpcaOptions {
  double floor_rel = kDefaultFloorRel;
  // Replace the pencil eigenvectors by an orthonormal basis of the same nested
  // subspaces (Gram-Schmidt in eigenvalue order). Eigenvalues stay those of
  // the pencil.
  bool orthonormalize = false;
};

ComponentModel pca_fit(const CovarianceEstimate& cxx, Index d);

ComponentModel dpca_fit(const CovarianceEstimate& cxx, const CovarianceEstimate& cyy, Index d,
                        const DpcaOptions& options = {});

// Same problem solved as PCA on the background-whitened target covariance,
// with the principal directions mapped back through the whitening factor.
ComponentModel dpca_fit_whitened(const CovarianceEstimate& cxx, const CovarianceEstimate& cyy,
                                 Index d, double floor_rel = kDefaultFloorRel);

// Top-d eigenpairs of C_xx - alpha C_yy ordered by algebraic value.
ComponentModel cpca_fit(const CovarianceEstimate& cxx, const CovarianceEstimate& cyy, double alpha,
                        Index d);

AlphaSelection cpca_select_alphas(const CovarianceEstimate& cxx, const CovarianceEstimate& cyy,
                                  std::span<const double> grid, Index d, Index n_select,
                                  std::uint64_t seed = 0);

// `count` values spaced evenly in log scale over [lo, hi].
std::vector<double> log_grid(double lo, double hi, int count);

// Product of the cosines of the principal angles between the column spans of
// two orthonormal bases of equal width.
double subspace_affinity(const Matrix& a, const Matrix& b);

EmbeddingResult transform(const ComponentModel& model, const DataMatrix& raw);

// max_i ||C_xx u_i - l_i C_yy u_i|| / (||C_xx||_F + l_i ||C_yy||_F) for a dpca model.
double pencil_residual(const ComponentModel& model, const CovarianceEstimate& cxx,
                       const CovarianceEstimate& cyy);

}  // namespace dpca
