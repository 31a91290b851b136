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

#include "dpca/methods.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "dpca/clustering.hpp"

namespace dpca {
namespace {

void check_pair(const CovarianceEstimate& cxx, const CovarianceEstimate& cyy) {
  if (cxx.matrix.dim() != cyy.matrix.dim()) {
    std::ostringstream msg;
    msg << "target has " << cxx.matrix.dim() << " features but background has " << cyy.matrix.dim();
    throw Error(ErrorCode::kDimension, msg.str());
  }
}

void check_count(Index d, Index dim) {
  if (d < 1 || d > dim) {
    std::ostringstream msg;
    msg << "requested " << d << " components from " << dim << " features";
    throw Error(ErrorCode::kDimension, msg.str());
  }
}

Vector mean_or_zero(const CovarianceEstimate& c) {
  return c.mean.size() == c.matrix.dim() ? c.mean : Vector::Zero(c.matrix.dim());
}

}  // namespace

const char* to_string(Method method) noexcept {
  switch (method) {
    case Method::kPca: return "pca";
    case Method::kCpca: return "cpca";
    case Method::kDpca: return "dpca";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) noexcept {
  if (name == "pca") return Method::kPca;
  if (name == "cpca") return Method::kCpca;
  if (name == "dpca") return Method::kDpca;
  return std::nullopt;
}

void validate(const ComponentModel& model) {
  const Index dim = model.components.rows();
  const Index d = model.components.cols();
  auto fail = [](const std::string& what) { throw Error(ErrorCode::kInvalidInput, "invalid model: " + what); };
  if (dim < 1 || d < 1 || d > dim) fail("component matrix has an impossible shape");
  if (!model.components.allFinite() || !model.eigenvalues.allFinite()) fail("non-finite entries");
  if (model.eigenvalues.size() != d) fail("eigenvalue count differs from component count");
  if (model.target_mean.size() != dim) fail("target mean has the wrong length");
  if (model.background_mean && model.background_mean->size() != dim) fail("background mean has the wrong length");
  for (Index j = 0; j < d; ++j) {
    if (std::abs(model.components.col(j).norm() - 1.0) > 1e-10) fail("component columns must have unit norm");
    if (j > 0 && model.eigenvalues(j) > model.eigenvalues(j - 1)) fail("eigenvalues must be descending");
  }
  if (model.alpha.has_value() != (model.method == Method::kCpca)) fail("alpha must be present exactly for cpca");
}

ComponentModel pca_fit(const CovarianceEstimate& cxx, Index d) {
  check_count(d, cxx.matrix.dim());
  const EigenDecomposition eig = sym_eigendecompose(cxx.matrix);
  ComponentModel model;
  model.method = Method::kPca;
  model.components = eig.eigenvectors.leftCols(d);
  model.eigenvalues = eig.eigenvalues.head(d);
  model.target_mean = mean_or_zero(cxx);
  model.regularization.target_ridge = cxx.ridge_applied;
  return model;
}

ComponentModel dpca_fit(const CovarianceEstimate& cxx, const CovarianceEstimate& cyy, Index d,
                        const DpcaOptions& options) {
  check_pair(cxx, cyy);
  check_count(d, cxx.matrix.dim());
  const GeneralizedEigenPairs pairs = generalized_eig(cxx.matrix, cyy.matrix, d, options.floor_rel);

  ComponentModel model;
  model.method = Method::kDpca;
  model.components = pairs.eigenvectors;
  model.eigenvalues = pairs.eigenvalues;
  if (options.orthonormalize && d > 1) {
    Eigen::HouseholderQR<Matrix> qr(pairs.eigenvectors);
    model.components = qr.householderQ() * Matrix::Identity(cxx.matrix.dim(), d);
    apply_sign_convention(model.components);
    model.orthonormalized = true;
  }
  model.target_mean = mean_or_zero(cxx);
  model.background_mean = mean_or_zero(cyy);
  model.regularization = {options.floor_rel, pairs.floor_applied, cxx.ridge_applied, cyy.ridge_applied};
  return model;
}

ComponentModel dpca_fit_whitened(const CovarianceEstimate& cxx, const CovarianceEstimate& cyy,
                                 Index d, double floor_rel) {
  check_pair(cxx, cyy);
  check_count(d, cxx.matrix.dim());
  const WhiteningFactor w = whitening_factor(cyy.matrix, floor_rel);

  // Covariance of the whitened target samples W x_i.
  Matrix whitened = w.factor * cxx.matrix.matrix() * w.factor;
  whitened = 0.5 * (whitened + whitened.transpose()).eval();
  const CovarianceEstimate transformed{SymMatrix(std::move(whitened)), cxx.sample_count, 0.0, Vector()};
  const ComponentModel principal = pca_fit(transformed, d);

  ComponentModel model;
  model.method = Method::kDpca;
  model.components = w.factor * principal.components;
  model.components.colwise().normalize();
  apply_sign_convention(model.components);
  model.eigenvalues = principal.eigenvalues.cwiseMax(0.0);
  model.target_mean = mean_or_zero(cxx);
  model.background_mean = mean_or_zero(cyy);
  model.regularization = {floor_rel, w.floor_applied, cxx.ridge_applied, cyy.ridge_applied};
  return model;
}

ComponentModel cpca_fit(const CovarianceEstimate& cxx, const CovarianceEstimate& cyy, double alpha,
                        Index d) {
  check_pair(cxx, cyy);
  check_count(d, cxx.matrix.dim());
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::kInvalidInput, "contrast strength alpha must be finite and nonnegative");
  }
  Matrix contrast = cxx.matrix.matrix() - alpha * cyy.matrix.matrix();
  const EigenDecomposition eig = sym_eigendecompose(SymMatrix(std::move(contrast)));

  ComponentModel model;
  model.method = Method::kCpca;
  model.components = eig.eigenvectors.leftCols(d);
  model.eigenvalues = eig.eigenvalues.head(d);
  model.alpha = alpha;
  model.target_mean = mean_or_zero(cxx);
  model.background_mean = mean_or_zero(cyy);
  model.regularization.target_ridge = cxx.ridge_applied;
  model.regularization.background_ridge = cyy.ridge_applied;
  return model;
}

std::vector<double> log_grid(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi) || count < 1) {
    throw Error(ErrorCode::kInvalidInput, "log grid needs 0 < lo <= hi and a positive count");
  }
  std::vector<double> grid(static_cast<std::size_t>(count));
  if (count == 1) {
    grid[0] = lo;
    return grid;
  }
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (int i = 0; i < count; ++i) {
    grid[static_cast<std::size_t>(i)] = std::pow(10.0, a + (b - a) * i / (count - 1));
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

double subspace_affinity(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::kDimension, "subspace bases must have the same shape");
  }
  const Matrix overlap = a.transpose() * b;
  const Vector cosines = Eigen::JacobiSVD<Matrix>(overlap).singularValues();
  double product = 1.0;
  for (Index i = 0; i < cosines.size(); ++i) product *= std::min(1.0, cosines(i));
  return std::clamp(product, 0.0, 1.0);
}

AlphaSelection cpca_select_alphas(const CovarianceEstimate& cxx, const CovarianceEstimate& cyy,
                                  std::span<const double> grid, Index d, Index n_select,
                                  std::uint64_t seed) {
  if (grid.empty()) throw Error(ErrorCode::kSelection, "alpha grid is empty");
  if (n_select < 1 || n_select > static_cast<Index>(grid.size())) {
    std::ostringstream msg;
    msg << "cannot select " << n_select << " values from a grid of " << grid.size();
    throw Error(ErrorCode::kSelection, msg.str());
  }

  const Index n = static_cast<Index>(grid.size());
  std::vector<Matrix> subspaces;
  subspaces.reserve(grid.size());
  for (double alpha : grid) subspaces.push_back(cpca_fit(cxx, cyy, alpha, d).components);

  AlphaSelection out;
  out.grid.assign(grid.begin(), grid.end());
  out.affinity = Matrix::Identity(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double a = subspace_affinity(subspaces[i], subspaces[j]);
      out.affinity(i, j) = a;
      out.affinity(j, i) = a;
    }
  }

  out.cluster_assignment = spectral_clustering(out.affinity, static_cast<int>(n_select), seed);
  for (int cluster = 0; cluster < static_cast<int>(n_select); ++cluster) {
    Index medoid = -1;
    double best = -1.0;
    for (Index i = 0; i < n; ++i) {
      if (out.cluster_assignment[i] != cluster) continue;
      double total = 0.0;
      for (Index j = 0; j < n; ++j) {
        if (out.cluster_assignment[j] == cluster) total += out.affinity(i, j);
      }
      if (total > best) {
        best = total;
        medoid = i;
      }
    }
    out.selected_indices.push_back(medoid);
    out.selected.push_back(out.grid[medoid]);
  }
  return out;
}

EmbeddingResult transform(const ComponentModel& model, const DataMatrix& raw) {
  if (raw.features() != model.dim()) {
    std::ostringstream msg;
    msg << "model expects " << model.dim() << " features, data has " << raw.features();
    throw Error(ErrorCode::kDimension, msg.str());
  }
  RowMatrix centered = raw.values().rowwise() - model.target_mean.transpose();
  return EmbeddingResult{centered * model.components, raw.labels()};
}

double pencil_residual(const ComponentModel& model, const CovarianceEstimate& cxx,
                       const CovarianceEstimate& cyy) {
  if (model.method != Method::kDpca) {
    throw Error(ErrorCode::kWrongMethod, std::string("pencil residual needs a dpca model, got ") +
                                             to_string(model.method));
  }
  check_pair(cxx, cyy);
  if (model.dim() != cxx.matrix.dim()) throw Error(ErrorCode::kDimension, "model and covariance sizes differ");
  const Matrix& a = cxx.matrix.matrix();
  const Matrix& b = cyy.matrix.matrix();
  const double a_norm = a.norm();
  const double b_norm = b.norm();
  double worst = 0.0;
  for (Index i = 0; i < model.count(); ++i) {
    const double lambda = model.eigenvalues(i);
    const Vector u = model.components.col(i);
    const double scale = a_norm + std::abs(lambda) * b_norm;
    if (scale == 0.0) continue;
    worst = std::max(worst, (a * u - lambda * (b * u)).norm() / scale);
  }
  return worst;
}

}  // namespace dpca
