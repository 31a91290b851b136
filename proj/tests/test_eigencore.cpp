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

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include <dpca/eigencore.hpp>

#include "oracle.hpp"
#include "support.hpp"

namespace dpca {
namespace {

using testing::diag;

void expect_decomposition_invariants(const Matrix& a, const EigenDecomposition& e) {
  const Index n = a.rows();
  const Matrix& u = e.eigenvectors;
  EXPECT_LE((a - u * e.eigenvalues.asDiagonal() * u.transpose()).norm(), 1e-8 * std::max(1.0, a.norm()));
  EXPECT_LE((u.transpose() * u - Matrix::Identity(n, n)).norm(), 1e-10 * n);
  for (Index i = 1; i < n; ++i) EXPECT_GE(e.eigenvalues(i - 1), e.eigenvalues(i));
}

void expect_sign_convention(const Matrix& cols) {
  for (Index j = 0; j < cols.cols(); ++j) {
    Index arg = 0;
    cols.col(j).cwiseAbs().maxCoeff(&arg);
    EXPECT_GT(cols(arg, j), 0.0) << "column " << j;
  }
}

TEST(SymMatrixTest, RejectsAsymmetry) {
  Matrix a(2, 2);
  a << 1, 2, 2.1, 1;
  try {
    SymMatrix s(a);
    FAIL() << "expected a symmetry violation";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSymmetryViolation);
  }
}

TEST(SymMatrixTest, AcceptsRoundoffAsymmetry) {
  Matrix a(2, 2);
  a << 1, 1e6, 1e6 + 1e-7, 1;
  EXPECT_NO_THROW(SymMatrix{a});
}

TEST(SymMatrixTest, RejectsNonFiniteAndEmpty) {
  Matrix a = Matrix::Identity(2, 2);
  a(0, 0) = std::numeric_limits<double>::quiet_NaN();
  try {
    SymMatrix s(a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidInput);
  }
  a(0, 0) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(SymMatrix{a}, Error);
  EXPECT_THROW(SymMatrix{Matrix(0, 0)}, Error);
  EXPECT_THROW(SymMatrix{Matrix::Zero(2, 3)}, Error);
}

TEST(SymEigendecomposeTest, Identity) {
  const EigenDecomposition e = sym_eigendecompose(SymMatrix::identity(3));
  EXPECT_TRUE(e.eigenvalues.isApprox(Vector::Ones(3)));
  expect_decomposition_invariants(Matrix::Identity(3, 3), e);
}

TEST(SymEigendecomposeTest, Diagonal) {
  const EigenDecomposition e = sym_eigendecompose(SymMatrix(diag({3, 1})));
  EXPECT_NEAR(e.eigenvalues(0), 3.0, 1e-14);
  EXPECT_NEAR(e.eigenvalues(1), 1.0, 1e-14);
  EXPECT_NEAR((e.eigenvectors.col(0) - Vector::Unit(2, 0)).norm(), 0.0, 1e-14);
  EXPECT_NEAR((e.eigenvectors.col(1) - Vector::Unit(2, 1)).norm(), 0.0, 1e-14);
}

TEST(SymEigendecomposeTest, Analytic2x2) {
  Matrix a(2, 2);
  a << 2, 1, 1, 2;
  const EigenDecomposition e = sym_eigendecompose(SymMatrix(a));
  EXPECT_NEAR(e.eigenvalues(0), 3.0, 1e-14);
  EXPECT_NEAR(e.eigenvalues(1), 1.0, 1e-14);
  const double r = 1.0 / std::sqrt(2.0);
  Vector v0(2), v1(2);
  v0 << r, r;
  v1 << r, -r;
  EXPECT_NEAR((e.eigenvectors.col(0) - v0).norm(), 0.0, 1e-14);
  EXPECT_NEAR((e.eigenvectors.col(1) - v1).norm(), 0.0, 1e-14);
}

TEST(SymEigendecomposeTest, MatchesJacobiOracle) {
  oracle::Gen gen(101);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = gen.integer(1, 30);
    Matrix a = oracle::Gen::symmetrized(gen.gaussian(n, n));
    const EigenDecomposition e = sym_eigendecompose(SymMatrix(a));
    const oracle::Eig ref = oracle::jacobi_eig(a);
    expect_decomposition_invariants(a, e);
    expect_sign_convention(e.eigenvectors);
    for (int i = 0; i < n; ++i) {
      EXPECT_NEAR(e.eigenvalues(i), ref.values(i), 1e-10 * std::max(1.0, std::abs(ref.values(i))));
      EXPECT_GE(oracle::abs_cos(e.eigenvectors.col(i), ref.vectors.col(i)), 1 - 1e-8);
    }
  }
}

TEST(SymEigendecomposeTest, Deterministic) {
  oracle::Gen gen(7);
  const Matrix a = gen.spd(25);
  const EigenDecomposition x = sym_eigendecompose(SymMatrix(a));
  const EigenDecomposition y = sym_eigendecompose(SymMatrix(a));
  EXPECT_EQ(x.eigenvalues, y.eigenvalues);
  EXPECT_EQ(x.eigenvectors, y.eigenvectors);
}

TEST(SignConventionTest, LargestEntryPositiveLowestIndexWinsTies) {
  Matrix c(3, 2);
  c << -0.5, 0.6, 0.5, -0.6, 0.1, 0.2;
  apply_sign_convention(c);
  EXPECT_DOUBLE_EQ(c(0, 0), 0.5);  // tie between rows 0 and 1: row 0 decides
  EXPECT_DOUBLE_EQ(c(1, 0), -0.5);
  EXPECT_DOUBLE_EQ(c(0, 1), 0.6);
  EXPECT_DOUBLE_EQ(c(2, 1), 0.2);
}

TEST(WhiteningFactorTest, IdentityStaysIdentity) {
  const WhiteningFactor w = whitening_factor(SymMatrix::identity(4));
  EXPECT_LE((w.factor - Matrix::Identity(4, 4)).norm(), 1e-14);
  EXPECT_FALSE(w.floor_applied);
}

TEST(WhiteningFactorTest, Diagonal) {
  const WhiteningFactor w = whitening_factor(SymMatrix(diag({4, 1})));
  EXPECT_LE((w.factor - diag({0.5, 1.0})).norm(), 1e-14);
}

TEST(WhiteningFactorTest, RandomSpdAgainstJacobi) {
  oracle::Gen gen(11);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = gen.integer(2, 40);
    const Matrix c = gen.spd(n, 1e-3, 1e3);
    const WhiteningFactor w = whitening_factor(SymMatrix(c));
    EXPECT_FALSE(w.floor_applied);
    EXPECT_LE((w.factor.transpose() * c * w.factor - Matrix::Identity(n, n)).norm(), 1e-8 * n);
    EXPECT_LE((w.factor - w.factor.transpose()).norm(), 0.0);
    // Reference inverse square root from the Jacobi oracle.
    const oracle::Eig ref = oracle::jacobi_eig(c);
    const Matrix ref_w = ref.vectors * ref.values.cwiseSqrt().cwiseInverse().asDiagonal() * ref.vectors.transpose();
    EXPECT_LE((w.factor - ref_w).norm(), 1e-8 * ref_w.norm());
  }
}

TEST(WhiteningFactorTest, FloorOnSingular) {
  const WhiteningFactor w = whitening_factor(SymMatrix(diag({1, 0})), 1e-4);
  EXPECT_TRUE(w.floor_applied);
  EXPECT_DOUBLE_EQ(w.floor_value, 1e-4);
  EXPECT_NEAR(w.factor(1, 1), 100.0, 1e-9);
}

TEST(WhiteningFactorTest, ZeroMatrixIsRankZero) {
  try {
    whitening_factor(SymMatrix(Matrix::Zero(3, 3)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRankZero);
  }
}

TEST(GeneralizedEigTest, DiagonalRatios) {
  const GeneralizedEigenPairs g = generalized_eig(SymMatrix(diag({2, 8})), SymMatrix(diag({1, 16})), 2);
  // Ratios 2/1 and 8/16 ranked by exhaustive comparison.
  EXPECT_NEAR(g.eigenvalues(0), 2.0, 1e-12);
  EXPECT_NEAR(g.eigenvalues(1), 0.5, 1e-12);
  EXPECT_NEAR((g.eigenvectors.col(0) - Vector::Unit(2, 0)).norm(), 0.0, 1e-12);
  EXPECT_NEAR((g.eigenvectors.col(1) - Vector::Unit(2, 1)).norm(), 0.0, 1e-12);
}

TEST(GeneralizedEigTest, EqualPencilGivesUnitEigenvalues) {
  oracle::Gen gen(3);
  const Matrix a = gen.spd(6);
  const GeneralizedEigenPairs g = generalized_eig(SymMatrix(a), SymMatrix(a), 6);
  for (Index i = 0; i < 6; ++i) EXPECT_NEAR(g.eigenvalues(i), 1.0, 1e-10);
}

TEST(GeneralizedEigTest, IdentityBackgroundMatchesSymEig) {
  oracle::Gen gen(4);
  const Matrix a = gen.spd(8);
  const GeneralizedEigenPairs g = generalized_eig(SymMatrix(a), SymMatrix::identity(8), 3);
  const EigenDecomposition e = sym_eigendecompose(SymMatrix(a));
  ASSERT_EQ(g.eigenvectors.cols(), 3);
  for (Index i = 0; i < 3; ++i) {
    EXPECT_NEAR(g.eigenvalues(i), e.eigenvalues(i), 1e-12 * e.eigenvalues(0));
    EXPECT_LE((g.eigenvectors.col(i) - e.eigenvectors.col(i)).norm(), 1e-10);
  }
}

TEST(GeneralizedEigTest, PencilResidualProperty) {
  oracle::Gen gen(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = gen.integer(2, 50);
    const int d = gen.integer(1, std::min(5, n));
    const Matrix a = gen.spd(n), b = gen.spd(n);
    const GeneralizedEigenPairs g = generalized_eig(SymMatrix(a), SymMatrix(b), d);
    ASSERT_EQ(g.eigenvalues.size(), d);
    expect_sign_convention(g.eigenvectors);
    for (int i = 0; i < d; ++i) {
      const Vector u = g.eigenvectors.col(i);
      const double lambda = g.eigenvalues(i);
      EXPECT_NEAR(u.norm(), 1.0, 1e-12);
      EXPECT_GE(lambda, 0.0);
      if (i > 0) {
        EXPECT_GE(g.eigenvalues(i - 1), lambda);
      }
      EXPECT_LE((a * u - lambda * b * u).norm(), 1e-7 * (a.norm() + lambda * b.norm()));
      EXPECT_NEAR(u.dot(a * u) / u.dot(b * u), lambda, 1e-8 * lambda);
    }
  }
}

TEST(GeneralizedEigTest, RouteAgreementWithBruteForce) {
  oracle::Gen gen(55);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = gen.integer(1, 8);
    const Matrix a = gen.spd(n), b = gen.spd(n);
    const GeneralizedEigenPairs g = generalized_eig(SymMatrix(a), SymMatrix(b), n);
    const Vector ref = oracle::pencil_values_bruteforce(a, b);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(g.eigenvalues(i), ref(i), 1e-8 * std::max(1.0, ref(i)));
  }
}

TEST(GeneralizedEigTest, ScalingCovariance) {
  oracle::Gen gen(66);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = gen.integer(2, 12);
    const Matrix a = gen.spd(n), b = gen.spd(n);
    const double c = std::exp(gen.uniform(-3, 3));
    const GeneralizedEigenPairs g = generalized_eig(SymMatrix(a), SymMatrix(b), n);
    const GeneralizedEigenPairs s = generalized_eig(SymMatrix(Matrix(c * a)), SymMatrix(b), n);
    for (int i = 0; i < n; ++i) {
      EXPECT_NEAR(s.eigenvalues(i), c * g.eigenvalues(i), 1e-9 * c * g.eigenvalues(i));
      EXPECT_LE((s.eigenvectors.col(i) - g.eigenvectors.col(i)).norm(), 1e-7);
    }
  }
}

TEST(GeneralizedEigTest, Deterministic) {
  oracle::Gen gen(67);
  const Matrix a = gen.spd(20), b = gen.spd(20);
  const GeneralizedEigenPairs x = generalized_eig(SymMatrix(a), SymMatrix(b), 5);
  const GeneralizedEigenPairs y = generalized_eig(SymMatrix(a), SymMatrix(b), 5);
  EXPECT_EQ(x.eigenvalues, y.eigenvalues);
  EXPECT_EQ(x.eigenvectors, y.eigenvectors);
}

TEST(GeneralizedEigTest, Errors) {
  const SymMatrix a(diag({1, 2}));
  try {
    generalized_eig(a, a, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimension);
  }
  EXPECT_THROW(generalized_eig(a, a, 0), Error);
  EXPECT_THROW(generalized_eig(a, SymMatrix::identity(3), 1), Error);
  try {
    generalized_eig(a, SymMatrix(Matrix::Zero(2, 2)), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRankZero);
  }
}

TEST(GeneralizedEigTest, SingularBackgroundUsesFloor) {
  const GeneralizedEigenPairs g = generalized_eig(SymMatrix(diag({1, 1})), SymMatrix(diag({1, 0})), 1);
  EXPECT_TRUE(g.floor_applied);
  EXPECT_NEAR((g.eigenvectors.col(0) - Vector::Unit(2, 1)).norm(), 0.0, 1e-12);
}

TEST(GeneralizedEigTest, CountsSolves) {
  reset_pencil_solve_count();
  generalized_eig(SymMatrix::identity(2), SymMatrix::identity(2), 1);
  generalized_eig(SymMatrix::identity(2), SymMatrix::identity(2), 1);
  EXPECT_EQ(pencil_solve_count(), 2u);
}

LinearOperator dense(const Matrix& a) {
  return [a](const Vector& x) -> Vector { return a * x; };
}

TEST(PowerTopdTest, DominantDiagonal) {
  PowerOptions opt;
  opt.tol = 1e-14;
  const GeneralizedEigenPairs g = power_topd(dense(diag({5, 1, 1})), 3, 1, opt);
  EXPECT_NEAR(g.eigenvalues(0), 5.0, 1e-12);
  EXPECT_GE(std::abs(g.eigenvectors(0, 0)), 1 - 1e-6);
}

TEST(PowerTopdTest, MatchesDenseSolve) {
  oracle::Gen gen(808);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = gen.integer(3, 30);
    Vector lambda(n);
    for (int i = 0; i < n; ++i) lambda(i) = 1.0 + 0.2 * (n - i) + gen.uniform(0, 0.05);
    const Matrix a = gen.with_spectrum(lambda);
    PowerOptions opt;
    opt.seed = static_cast<std::uint64_t>(trial);
    const GeneralizedEigenPairs g = power_topd(dense(a), n, 3, opt);
    const oracle::Eig ref = oracle::jacobi_eig(a);
    for (int i = 0; i < 3; ++i) {
      EXPECT_NEAR(g.eigenvalues(i), ref.values(i), 1e-6);
      EXPECT_GE(oracle::abs_cos(g.eigenvectors.col(i), ref.vectors.col(i)), 1 - 1e-6);
    }
  }
}

TEST(PowerTopdTest, DegenerateEigenspace) {
  PowerOptions opt;
  opt.tol = 1e-12;
  const GeneralizedEigenPairs g = power_topd(dense(diag({2, 2})), 2, 1, opt);
  EXPECT_NEAR(g.eigenvalues(0), 2.0, 1e-12);
  EXPECT_NEAR(g.eigenvectors.col(0).norm(), 1.0, 1e-12);
}

TEST(PowerTopdTest, SeededRunsAreIdentical) {
  oracle::Gen gen(9);
  const Matrix a = gen.spd(10);
  PowerOptions opt;
  opt.seed = 42;
  opt.tol = 1e-10;
  const GeneralizedEigenPairs x = power_topd(dense(a), 10, 2, opt);
  const GeneralizedEigenPairs y = power_topd(dense(a), 10, 2, opt);
  EXPECT_EQ(x.eigenvalues, y.eigenvalues);
  EXPECT_EQ(x.eigenvectors, y.eigenvectors);
}

TEST(PowerTopdTest, NonConvergenceCarriesBestIterate) {
  Matrix a = diag({1.0, 0.999999, 0.5});
  PowerOptions opt;
  opt.tol = 1e-300;
  opt.max_iter = 5;
  try {
    power_topd(dense(a), 3, 1, opt);
    FAIL() << "expected non-convergence";
  } catch (const NonConvergenceError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonConvergence);
    EXPECT_EQ(e.best_iterate().size(), 3);
    EXPECT_NEAR(e.best_iterate().norm(), 1.0, 1e-12);
    EXPECT_GE(e.residual(), 0.0);
  }
}

TEST(PowerTopdTest, RejectsBadArguments) {
  PowerOptions opt;
  EXPECT_THROW(power_topd(dense(diag({1, 2})), 2, 3, opt), Error);
  opt.tol = 0.0;
  EXPECT_THROW(power_topd(dense(diag({1, 2})), 2, 1, opt), Error);
}

}  // namespace
}  // namespace dpca
