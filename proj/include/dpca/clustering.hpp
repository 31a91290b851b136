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
#include <vector>

#include "dpca/error.hpp"

namespace dpca {

struct KMeansResult {
  std::vector<int> assignment;  // clusters numbered by first appearance
  RowMatrix centroids;
  double inertia = 0.0;
};

// Lloyd iterations from seeded k-means++ starts; the restart with the lowest
// inertia wins. Every one of the k clusters is nonempty whenever k <= rows.
KMeansResult kmeans(const RowMatrix& points, int k, std::uint64_t seed, int restarts = 10,
                    int max_iter = 300);

// Normalized spectral clustering of a symmetric nonnegative affinity matrix:
// leading eigenvectors of D^{-1/2} A D^{-1/2}, rows normalized, then k-means.
std::vector<int> spectral_clustering(const Matrix& affinity, int k, std::uint64_t seed);

}  // namespace dpca
