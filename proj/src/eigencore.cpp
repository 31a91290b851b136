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

#include "dpca/eigencore.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace dpca {
namespace {

std::atomic<std::uint64_t> g_pencil_solves{0};

void check_symmetric(const Matrix& a) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    std::ostringstream msg;
    msg << "expected a non-empty square matrix, got " << a.rows() << "x" << a.cols();
    throw Error(ErrorCode::kInvalidInput, msg.str());
  }
  if (!a.allFinite()) throw Error(ErrorCode::kInvalidInput, "matrix has non-finite entries");
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = j + 1; i < a.rows(); ++i) {
      const double tol = 1e-12 * std::max(1.0, std::abs(a(i, j)));
      if (std::abs(a(i, j) - a(j, i)) > tol) {
        std::ostringstream msg;
        msg << "matrix is not symmetric at (" << i << ", " << j << "): " << a(i, j)
            << " vs " << a(j, i);
        throw Error(ErrorCode::kSymmetryViolation, msg.str());
      }
    }
  }
}

// Pairs of a symmetric eigenproblem in descending order.
EigenDecomposition descending_eig(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kNonConvergence, "dense symmetric eigensolver did not converge");
  }
  EigenDecomposition out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  apply_sign_convention(out.eigenvectors);
  return out;
}

void check_component_count(Index d, Index dim) {
  if (d < 1 || d > dim) {
    std::ostringstream msg;
    msg << "requested " << d << " components from a " << dim << "-dimensional problem";
    throw Error(ErrorCode::kDimension, msg.str());
  }
}

}  // namespace

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidInput: return "invalid input";
    case ErrorCode::kSymmetryViolation: return "symmetry violation";
    case ErrorCode::kDimension: return "dimension error";
    case ErrorCode::kRankZero: return "rank-zero matrix";
    case ErrorCode::kNonConvergence: return "non-convergence";
    case ErrorCode::kSelection: return "selection error";
    case ErrorCode::kWrongMethod: return "wrong method";
    case ErrorCode::kIo: return "i/o error";
    case ErrorCode::kParse: return "parse error";
  }
  return "unknown error";
}

SymMatrix::SymMatrix(Matrix values) : values_(std::move(values)) { check_symmetric(values_); }

SymMatrix SymMatrix::identity(Index dim) { return SymMatrix(Matrix::Identity(dim, dim)); }

void apply_sign_convention(Matrix& columns) {
  for (Index j = 0; j < columns.cols(); ++j) {
    Index pivot = 0;
    double best = -1.0;
    for (Index i = 0; i < columns.rows(); ++i) {
      const double mag = std::abs(columns(i, j));
      if (mag > best) {
        best = mag;
        pivot = i;
      }
    }
    if (columns.rows() > 0 && columns(pivot, j) < 0.0) columns.col(j) *= -1.0;
  }
}

EigenDecomposition sym_eigendecompose(const SymMatrix& a) { return descending_eig(a.matrix()); }

WhiteningFactor whitening_factor(const SymMatrix& c, double floor_rel) {
  if (!(floor_rel >= 0.0) || !std::isfinite(floor_rel)) {
    throw Error(ErrorCode::kInvalidInput, "eigenvalue floor must be a finite nonnegative number");
  }
  const EigenDecomposition eig = descending_eig(c.matrix());
  const double sigma_max = eig.eigenvalues(0);
  if (!(sigma_max > 0.0)) {
    throw Error(ErrorCode::kRankZero, "cannot whiten a matrix with no positive eigenvalue");
  }

  WhiteningFactor out;
  out.floor_value = floor_rel * sigma_max;
  Vector inv_root(eig.eigenvalues.size());
  for (Index i = 0; i < inv_root.size(); ++i) {
    const double sigma = eig.eigenvalues(i);
    if (sigma < out.floor_value) out.floor_applied = true;
    const double clamped = std::max(sigma, out.floor_value);
    if (!(clamped > 0.0)) {
      throw Error(ErrorCode::kRankZero,
                  "matrix is singular and the eigenvalue floor is zero; raise --floor or add a ridge");
    }
    inv_root(i) = 1.0 / std::sqrt(clamped);
  }
  const Matrix w = eig.eigenvectors * inv_root.asDiagonal() * eig.eigenvectors.transpose();
  out.factor = 0.5 * (w + w.transpose());
  return out;
}

GeneralizedEigenPairs generalized_eig(const SymMatrix& a, const SymMatrix& b, Index d,
                                      double floor_rel) {
  if (a.dim() != b.dim()) {
    std::ostringstream msg;
    msg << "pencil dimension mismatch: " << a.dim() << " vs " << b.dim();
    throw Error(ErrorCode::kDimension, msg.str());
  }
  check_component_count(d, a.dim());
  g_pencil_solves.fetch_add(1, std::memory_order_relaxed);

  const WhiteningFactor w = whitening_factor(b, floor_rel);
  Matrix whitened = w.factor * a.matrix() * w.factor;
  whitened = 0.5 * (whitened + whitened.transpose()).eval();
  const EigenDecomposition eig = descending_eig(whitened);

  // Eigenvalues of W A W are nonnegative for PSD A; anything clearly negative
  // means A was not PSD.
  const double scale = std::max(std::abs(eig.eigenvalues(0)), std::numeric_limits<double>::min());
  if (eig.eigenvalues(eig.eigenvalues.size() - 1) < -1e-8 * scale) {
    throw Error(ErrorCode::kInvalidInput, "first pencil matrix is not positive semidefinite");
  }

  GeneralizedEigenPairs out;
  out.floor_applied = w.floor_applied;
  out.eigenvalues = eig.eigenvalues.head(d).cwiseMax(0.0);
  out.eigenvectors = w.factor * eig.eigenvectors.leftCols(d);
  out.eigenvectors.colwise().normalize();
  apply_sign_convention(out.eigenvectors);
  return out;
}

std::uint64_t pencil_solve_count() noexcept { return g_pencil_solves.load(std::memory_order_relaxed); }

void reset_pencil_solve_count() noexcept { g_pencil_solves.store(0, std::memory_order_relaxed); }

GeneralizedEigenPairs power_topd(const LinearOperator& apply, Index dim, Index d,
                                 const PowerOptions& options) {
  if (dim < 1) throw Error(ErrorCode::kDimension, "operator dimension must be positive");
  check_component_count(d, dim);
  if (!(options.tol > 0.0)) throw Error(ErrorCode::kInvalidInput, "tolerance must be positive");
  if (options.max_iter < 1) throw Error(ErrorCode::kInvalidInput, "max_iter must be positive");

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  GeneralizedEigenPairs out;
  out.eigenvalues = Vector::Zero(d);
  out.eigenvectors = Matrix::Zero(dim, d);

  for (Index k = 0; k < d; ++k) {
    const auto found = out.eigenvectors.leftCols(k);
    const auto found_values = out.eigenvalues.head(k);
    auto deflated = [&](const Vector& x) {
      Vector y = apply(x);
      if (y.size() != dim) throw Error(ErrorCode::kDimension, "operator returned a vector of the wrong size");
      if (k > 0) y.noalias() -= found * (found_values.asDiagonal() * (found.transpose() * x));
      return y;
    };

    Vector v(dim);
    double start_norm = 0.0;
    while (start_norm == 0.0) {
      for (Index i = 0; i < dim; ++i) v(i) = normal(rng);
      if (k > 0) v -= found * (found.transpose() * v);
      start_norm = v.norm();
    }
    v /= start_norm;

    double previous = std::numeric_limits<double>::quiet_NaN();
    bool converged = false;
    for (int iter = 0; iter < options.max_iter; ++iter) {
      const Vector w = deflated(v);
      const double rayleigh = v.dot(w);
      const double w_norm = w.norm();
      if (w_norm == 0.0) {
        // v lies in the null space of the deflated operator.
        converged = true;
        break;
      }
      v = w / w_norm;
      if (std::abs(rayleigh - previous) <= options.tol) {
        converged = true;
        break;
      }
      previous = rayleigh;
    }

    const Vector av = deflated(v);
    const double rayleigh = v.dot(av);
    if (!converged) {
      const double residual = (av - rayleigh * v).norm();
      std::ostringstream msg;
      msg << "power iteration did not converge for pair " << k << " within " << options.max_iter
          << " iterations (residual " << residual << ")";
      throw NonConvergenceError(msg.str(), v, residual);
    }
    out.eigenvalues(k) = rayleigh;
    out.eigenvectors.col(k) = v;
  }
  apply_sign_convention(out.eigenvectors);
  return out;
}

}  // namespace dpca
