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

#include "dpca/clustering.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "dpca/eigencore.hpp"

namespace dpca {
namespace {

using Rng = std::mt19937_64;

RowMatrix plus_plus_init(const RowMatrix& points, int k, Rng& rng) {
  const Index n = points.rows();
  RowMatrix centroids(k, points.cols());
  std::vector<bool> taken(static_cast<std::size_t>(n), false);
  Index first = std::uniform_int_distribution<Index>(0, n - 1)(rng);
  centroids.row(0) = points.row(first);
  taken[first] = true;

  Vector nearest = (points.rowwise() - centroids.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = nearest.sum();
    Index pick = -1;
    if (total > 0.0) {
      double target = std::uniform_real_distribution<double>(0.0, total)(rng);
      for (Index i = 0; i < n; ++i) {
        if (nearest(i) <= 0.0) continue;
        pick = i;
        target -= nearest(i);
        if (target <= 0.0) break;
      }
    } else {
      // Remaining points coincide with chosen centers; pick an unused index.
      std::vector<Index> free;
      for (Index i = 0; i < n; ++i) {
        if (!taken[i]) free.push_back(i);
      }
      pick = free[std::uniform_int_distribution<std::size_t>(0, free.size() - 1)(rng)];
    }
    taken[pick] = true;
    centroids.row(c) = points.row(pick);
    nearest = nearest.cwiseMin((points.rowwise() - centroids.row(c)).rowwise().squaredNorm());
  }
  return centroids;
}

// Moves the worst-fitting point of a multi-member cluster into each empty one.
void fill_empty_clusters(const RowMatrix& points, const RowMatrix& centroids, std::vector<int>& assignment,
                         int k) {
  for (int c = 0; c < k; ++c) {
    std::vector<Index> sizes(static_cast<std::size_t>(k), 0);
    for (int a : assignment) ++sizes[a];
    if (sizes[c] > 0) continue;
    Index donor = -1;
    double worst = -1.0;
    for (Index i = 0; i < points.rows(); ++i) {
      const int owner = assignment[i];
      if (sizes[owner] < 2) continue;
      const double dist = (points.row(i) - centroids.row(owner)).squaredNorm();
      if (dist > worst) {
        worst = dist;
        donor = i;
      }
    }
    assignment[donor] = c;
  }
}

std::vector<int> canonical_labels(const std::vector<int>& assignment, int k, std::vector<int>* order) {
  std::vector<int> remap(static_cast<std::size_t>(k), -1);
  int next = 0;
  std::vector<int> out(assignment.size());
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    int& slot = remap[assignment[i]];
    if (slot < 0) {
      slot = next++;
      if (order) order->push_back(assignment[i]);
    }
    out[i] = slot;
  }
  return out;
}

}  // namespace

KMeansResult kmeans(const RowMatrix& points, int k, std::uint64_t seed, int restarts, int max_iter) {
  const Index n = points.rows();
  if (k < 1 || k > n) {
    std::ostringstream msg;
    msg << "cannot form " << k << " clusters from " << n << " points";
    throw Error(ErrorCode::kSelection, msg.str());
  }
  if (!points.allFinite()) throw Error(ErrorCode::kInvalidInput, "clustering input has non-finite values");

  Rng rng(seed);
  KMeansResult best;
  best.inertia = std::numeric_limits<double>::infinity();

  for (int r = 0; r < std::max(1, restarts); ++r) {
    RowMatrix centroids = plus_plus_init(points, k, rng);
    std::vector<int> assignment(static_cast<std::size_t>(n), -1);
    for (int iter = 0; iter < max_iter; ++iter) {
      std::vector<int> next(static_cast<std::size_t>(n), 0);
      for (Index i = 0; i < n; ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (int c = 0; c < k; ++c) {
          const double dist = (points.row(i) - centroids.row(c)).squaredNorm();
          if (dist < nearest) {
            nearest = dist;
            next[i] = c;
          }
        }
      }
      fill_empty_clusters(points, centroids, next, k);
      const bool stable = next == assignment;
      assignment = std::move(next);

      RowMatrix sums = RowMatrix::Zero(k, points.cols());
      std::vector<Index> sizes(static_cast<std::size_t>(k), 0);
      for (Index i = 0; i < n; ++i) {
        sums.row(assignment[i]) += points.row(i);
        ++sizes[assignment[i]];
      }
      for (int c = 0; c < k; ++c) centroids.row(c) = sums.row(c) / static_cast<double>(sizes[c]);
      if (stable) break;
    }

    double inertia = 0.0;
    for (Index i = 0; i < n; ++i) inertia += (points.row(i) - centroids.row(assignment[i])).squaredNorm();
    if (inertia < best.inertia) {
      std::vector<int> order;
      best.assignment = canonical_labels(assignment, k, &order);
      best.centroids.resize(k, points.cols());
      for (int c = 0; c < k; ++c) best.centroids.row(c) = centroids.row(order[c]);
      best.inertia = inertia;
    }
  }
  return best;
}

std::vector<int> spectral_clustering(const Matrix& affinity, int k, std::uint64_t seed) {
  const Index n = affinity.rows();
  if (affinity.cols() != n || n == 0) throw Error(ErrorCode::kDimension, "affinity must be square");
  if (k < 1 || k > n) {
    std::ostringstream msg;
    msg << "cannot form " << k << " clusters from " << n << " candidates";
    throw Error(ErrorCode::kSelection, msg.str());
  }
  if ((affinity.array() < 0.0).any()) throw Error(ErrorCode::kInvalidInput, "affinity must be nonnegative");

  Vector inv_sqrt_degree = affinity.rowwise().sum();
  for (Index i = 0; i < n; ++i) {
    inv_sqrt_degree(i) = inv_sqrt_degree(i) > 0.0 ? 1.0 / std::sqrt(inv_sqrt_degree(i)) : 0.0;
  }
  // Bottom eigenvectors of I - N are the top eigenvectors of N.
  Matrix normalized = inv_sqrt_degree.asDiagonal() * affinity * inv_sqrt_degree.asDiagonal();
  normalized = 0.5 * (normalized + normalized.transpose()).eval();
  const EigenDecomposition eig = sym_eigendecompose(SymMatrix(std::move(normalized)));

  RowMatrix embedding = eig.eigenvectors.leftCols(k);
  for (Index i = 0; i < n; ++i) {
    const double norm = embedding.row(i).norm();
    if (norm > 0.0) embedding.row(i) /= norm;
  }
  return kmeans(embedding, k, seed).assignment;
}

}  // namespace dpca
