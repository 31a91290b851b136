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

#include "dpca/evaluation.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <limits>
#include <sstream>

#include "dpca/clustering.hpp"

namespace dpca {
namespace {

// Labels remapped onto 0..K-1 in ascending label order.
std::vector<int> dense_labels(const RowMatrix& coordinates, const Labels& labels, int* classes) {
  if (static_cast<Index>(labels.size()) != coordinates.rows()) {
    throw Error(ErrorCode::kDimension, "label count does not match embedding rows");
  }
  if (coordinates.cols() < 1) throw Error(ErrorCode::kDimension, "embedding has no columns");
  std::map<std::int64_t, int> ids;
  for (std::int64_t l : labels) ids.emplace(l, 0);
  int next = 0;
  for (auto& [label, id] : ids) id = next++;
  *classes = next;
  std::vector<int> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) out[i] = ids[labels[i]];
  return out;
}

RowMatrix leading_columns(const RowMatrix& coordinates) {
  return coordinates.leftCols(std::min<Index>(2, coordinates.cols()));
}

}  // namespace

double kmeans_accuracy(const RowMatrix& coordinates, const Labels& labels, std::uint64_t seed) {
  int classes = 0;
  const std::vector<int> truth = dense_labels(coordinates, labels, &classes);
  if (classes > 8) throw Error(ErrorCode::kInvalidInput, "accuracy matching supports at most 8 classes");
  const KMeansResult clusters = kmeans(leading_columns(coordinates), classes, seed);

  std::vector<std::vector<Index>> counts(classes, std::vector<Index>(classes, 0));
  for (std::size_t i = 0; i < truth.size(); ++i) ++counts[clusters.assignment[i]][truth[i]];

  std::vector<int> perm(static_cast<std::size_t>(classes));
  std::iota(perm.begin(), perm.end(), 0);
  Index best = 0;
  do {
    Index matched = 0;
    for (int c = 0; c < classes; ++c) matched += counts[c][perm[c]];
    best = std::max(best, matched);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(best) / static_cast<double>(truth.size());
}

double silhouette(const RowMatrix& coordinates, const Labels& labels) {
  int classes = 0;
  const std::vector<int> group = dense_labels(coordinates, labels, &classes);
  if (classes < 2) throw Error(ErrorCode::kInvalidInput, "silhouette needs at least two label groups");
  const RowMatrix points = leading_columns(coordinates);
  const Index n = points.rows();

  std::vector<Index> sizes(static_cast<std::size_t>(classes), 0);
  for (int g : group) ++sizes[g];

  double total = 0.0;
  std::vector<double> sums(static_cast<std::size_t>(classes));
  for (Index i = 0; i < n; ++i) {
    std::fill(sums.begin(), sums.end(), 0.0);
    for (Index j = 0; j < n; ++j) {
      if (j != i) sums[group[j]] += (points.row(i) - points.row(j)).norm();
    }
    const int own = group[i];
    if (sizes[own] < 2) continue;
    const double a = sums[own] / static_cast<double>(sizes[own] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (int g = 0; g < classes; ++g) {
      if (g != own) b = std::min(b, sums[g] / static_cast<double>(sizes[g]));
    }
    const double denom = std::max(a, b);
    if (denom > 0.0) total += (b - a) / denom;
  }
  return total / static_cast<double>(n);
}

}  // namespace dpca
