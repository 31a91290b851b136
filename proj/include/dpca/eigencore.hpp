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
#include <functional>

#include "dpca/error.hpp"

namespace dpca {

// Symmetric, finite dense matrix. Construction validates both properties so
// every solver downstream can assume them.
class SymMatrix {
 public:
  // Throws kSymmetryViolation when |a_ij - a_ji| > 1e-12 * max(1, |a_ij|) and
  // kInvalidInput on NaN/Inf or an empty matrix.
  explicit SymMatrix(Matrix values);

  static SymMatrix identity(Index dim);

  Index dim() const noexcept { return values_.rows(); }
  const Matrix& matrix() const noexcept { return values_; }

 private:
  Matrix values_;
};

struct EigenDecomposition {
  Vector eigenvalues;   // descending
  Matrix eigenvectors;  // columns orthonormal, sign-normalized
};

struct WhiteningFactor {
  Matrix factor;  // symmetric, W^T C W = I when no floor was applied
  bool floor_applied = false;
  double floor_value = 0.0;
};

struct GeneralizedEigenPairs {
  Vector eigenvalues;   // descending, nonnegative
  Matrix eigenvectors;  // D x d, unit Euclidean norm columns
  bool floor_applied = false;
};

inline constexpr double kDefaultFloorRel = 1e-10;

// Flips each column so its largest-magnitude entry is positive (ties go to
// the lowest row index).
void apply_sign_convention(Matrix& columns);

EigenDecomposition sym_eigendecompose(const SymMatrix& a);

// Symmetric inverse square root U diag(max(s_i, floor_rel * s_max))^{-1/2} U^T.
WhiteningFactor whitening_factor(const SymMatrix& c, double floor_rel = kDefaultFloorRel);

// Top-d pairs of the symmetric-definite pencil (A, B) via the whitened
// problem W^T A W, mapped back as u = W v and normalized to unit length.
GeneralizedEigenPairs generalized_eig(const SymMatrix& a, const SymMatrix& b, Index d,
                                      double floor_rel = kDefaultFloorRel);

// Number of generalized_eig calls since process start or the last reset.
std::uint64_t pencil_solve_count() noexcept;
void reset_pencil_solve_count() noexcept;

using LinearOperator = std::function<Vector(const Vector&)>;

struct PowerOptions {
  double tol = 1e-12;
  int max_iter = 100000;
  std::uint64_t seed = 0;
};

class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, Vector best_iterate, double residual)
      : Error(ErrorCode::kNonConvergence, what),
        best_iterate_(std::move(best_iterate)),
        residual_(residual) {}

  const Vector& best_iterate() const noexcept { return best_iterate_; }
  double residual() const noexcept { return residual_; }

 private:
  Vector best_iterate_;
  double residual_;
};

// Power iteration with deflation on a symmetric PSD operator. A pair is
// accepted once successive Rayleigh quotients differ by at most tol.
GeneralizedEigenPairs power_topd(const LinearOperator& apply, Index dim, Index d,
                                 const PowerOptions& options = {});

}  // namespace dpca
