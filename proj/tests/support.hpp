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

#include <dpca/datamodel.hpp>
#include <dpca/eigencore.hpp>

#include "oracle.hpp"

namespace dpca::testing {

inline CovarianceEstimate cov(const Matrix& c) {
  return CovarianceEstimate{SymMatrix(c), 0, 0.0, Vector::Zero(c.rows())};
}

inline Matrix diag(std::initializer_list<double> values) {
  Vector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) v(i++) = x;
  return v.asDiagonal();
}

inline Vector unit(Index dim, Index i) { return Vector::Unit(dim, i); }

}  // namespace dpca::testing
