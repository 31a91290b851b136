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

#include "dpca/datamodel.hpp"

namespace dpca {

// Accuracy of k-means (k = number of distinct labels) on the first two
// embedding columns against the labels, maximized over cluster-to-label
// matchings.
double kmeans_accuracy(const RowMatrix& coordinates, const Labels& labels, std::uint64_t seed = 0);

// Mean silhouette of the labelled groups on the first two embedding columns.
double silhouette(const RowMatrix& coordinates, const Labels& labels);

}  // namespace dpca
