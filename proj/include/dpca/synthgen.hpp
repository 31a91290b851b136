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
#include <span>
#include <vector>

#include "dpca/datamodel.hpp"

namespace dpca {

// Ground truth for the bilinear factor models
//   background:  y = m_y + U_b psi + e
//   target:      x = m_x + U_b chi_b + U_s chi_s + e
// with Gaussian coefficients and isotropic Gaussian noise.
struct FactorModelSpec {
  Index dim = 0;
  Index shared_rank = 0;    // k, columns of U_b
  Index specific_rank = 0;  // d_s, columns of U_s
  Matrix shared_basis;      // U_b, D x k
  Matrix specific_basis;    // U_s, D x d_s, orthogonal to U_b
  Vector target_mean;
  Vector background_mean;
  Vector background_coeff_std;  // std of psi, length k
  Vector shared_coeff_std;      // std of chi_b, length k
  Vector specific_coeff_std;    // std of chi_s around its cluster offset, length d_s
  double noise_std = 0.0;
  std::uint64_t seed = 0;
};

struct FactorModelOptions {
  Index dim = 20;
  Index shared_rank = 3;
  Index specific_rank = 1;
  std::vector<double> background_coeff_std;
  std::vector<double> shared_coeff_std;
  std::vector<double> specific_coeff_std;
  double noise_std = 0.0;
  double mean_scale = 1.0;  // entries of m_x, m_y are N(0, mean_scale^2)
  std::uint64_t seed = 0;
};

struct LabeledDataset {
  DataMatrix target;
  DataMatrix background;
  FactorModelSpec truth;
};

// Throws kInvalidInput when k + d_s > D, a std vector has the wrong length or
// a negative entry, or [U_b U_s] is not orthonormal within 1e-10.
void validate(const FactorModelSpec& spec);

// Draws orthonormal U_b, U_s (QR of a seeded Gaussian matrix) and the means.
FactorModelSpec make_factor_spec(const FactorModelOptions& options);

DataMatrix gen_background(const FactorModelSpec& spec, Index n);

// Rows are split evenly over the clusters in a seeded random order; chi_s is
// the cluster offset plus Gaussian jitter. Labels hold the cluster index.
DataMatrix gen_target(const FactorModelSpec& spec, Index m, std::span<const Vector> cluster_offsets);

LabeledDataset gen_dataset(const FactorModelSpec& spec, Index m, Index n,
                           std::span<const Vector> cluster_offsets);

}  // namespace dpca
