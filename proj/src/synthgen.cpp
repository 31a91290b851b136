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

#include "dpca/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/QR>

#include "dpca/eigencore.hpp"

namespace dpca {
namespace {

enum class Stream : std::uint32_t { kSpec = 1, kBackground = 2, kTarget = 3 };

std::mt19937_64 make_rng(std::uint64_t seed, Stream stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

Vector to_vector(const std::vector<double>& values) {
  return Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
}

void check_std(const Vector& stds, Index expected, const char* name) {
  if (stds.size() != expected) {
    std::ostringstream msg;
    msg << name << " has " << stds.size() << " entries, expected " << expected;
    throw Error(ErrorCode::kInvalidInput, msg.str());
  }
  if (!stds.allFinite() || (stds.array() < 0.0).any()) {
    throw Error(ErrorCode::kInvalidInput, std::string(name) + " must be finite and nonnegative");
  }
}

}  // namespace

void validate(const FactorModelSpec& spec) {
  const Index dim = spec.dim;
  if (dim < 1 || spec.shared_rank < 0 || spec.specific_rank < 0) {
    throw Error(ErrorCode::kInvalidInput, "factor model needs D >= 1 and nonnegative ranks");
  }
  if (spec.shared_rank + spec.specific_rank > dim) {
    std::ostringstream msg;
    msg << "shared rank " << spec.shared_rank << " plus specific rank " << spec.specific_rank
        << " exceeds dimension " << dim;
    throw Error(ErrorCode::kInvalidInput, msg.str());
  }
  if (spec.shared_basis.rows() != dim || spec.shared_basis.cols() != spec.shared_rank ||
      spec.specific_basis.rows() != dim || spec.specific_basis.cols() != spec.specific_rank ||
      spec.target_mean.size() != dim || spec.background_mean.size() != dim) {
    throw Error(ErrorCode::kInvalidInput, "factor model arrays have inconsistent shapes");
  }
  check_std(spec.background_coeff_std, spec.shared_rank, "background coefficient std");
  check_std(spec.shared_coeff_std, spec.shared_rank, "shared coefficient std");
  check_std(spec.specific_coeff_std, spec.specific_rank, "specific coefficient std");
  if (!(spec.noise_std >= 0.0) || !std::isfinite(spec.noise_std)) {
    throw Error(ErrorCode::kInvalidInput, "noise std must be finite and nonnegative");
  }
  if (!spec.target_mean.allFinite() || !spec.background_mean.allFinite()) {
    throw Error(ErrorCode::kInvalidInput, "factor model means must be finite");
  }

  Matrix joint(dim, spec.shared_rank + spec.specific_rank);
  joint << spec.shared_basis, spec.specific_basis;
  const Index r = joint.cols();
  if ((joint.transpose() * joint - Matrix::Identity(r, r)).norm() > 1e-10) {
    throw Error(ErrorCode::kInvalidInput, "[U_b U_s] must have orthonormal columns");
  }
}

FactorModelSpec make_factor_spec(const FactorModelOptions& options) {
  FactorModelSpec spec;
  spec.dim = options.dim;
  spec.shared_rank = options.shared_rank;
  spec.specific_rank = options.specific_rank;
  spec.background_coeff_std = to_vector(options.background_coeff_std);
  spec.shared_coeff_std = to_vector(options.shared_coeff_std);
  spec.specific_coeff_std = to_vector(options.specific_coeff_std);
  spec.noise_std = options.noise_std;
  spec.seed = options.seed;
  if (spec.dim < 1 || spec.shared_rank < 0 || spec.specific_rank < 0 ||
      spec.shared_rank + spec.specific_rank > spec.dim) {
    std::ostringstream msg;
    msg << "invalid factor model ranks: D=" << spec.dim << " k=" << spec.shared_rank
        << " d_s=" << spec.specific_rank << " (need k + d_s <= D)";
    throw Error(ErrorCode::kInvalidInput, msg.str());
  }
  if (!(options.mean_scale >= 0.0) || !std::isfinite(options.mean_scale)) {
    throw Error(ErrorCode::kInvalidInput, "mean scale must be finite and nonnegative");
  }

  auto rng = make_rng(options.seed, Stream::kSpec);
  std::normal_distribution<double> normal(0.0, 1.0);
  const Index r = spec.shared_rank + spec.specific_rank;
  Matrix gaussian(spec.dim, r);
  for (Index j = 0; j < r; ++j) {
    for (Index i = 0; i < spec.dim; ++i) gaussian(i, j) = normal(rng);
  }
  Matrix basis = Matrix::Zero(spec.dim, r);
  if (r > 0) {
    Eigen::HouseholderQR<Matrix> qr(gaussian);
    basis = qr.householderQ() * Matrix::Identity(spec.dim, r);
    apply_sign_convention(basis);
  }
  spec.shared_basis = basis.leftCols(spec.shared_rank);
  spec.specific_basis = basis.rightCols(spec.specific_rank);

  spec.target_mean.resize(spec.dim);
  spec.background_mean.resize(spec.dim);
  for (Index i = 0; i < spec.dim; ++i) spec.target_mean(i) = options.mean_scale * normal(rng);
  for (Index i = 0; i < spec.dim; ++i) spec.background_mean(i) = options.mean_scale * normal(rng);

  validate(spec);
  return spec;
}

DataMatrix gen_background(const FactorModelSpec& spec, Index n) {
  validate(spec);
  if (n < 1) throw Error(ErrorCode::kInvalidInput, "background needs at least one sample");
  auto rng = make_rng(spec.seed, Stream::kBackground);
  std::normal_distribution<double> normal(0.0, 1.0);

  RowMatrix rows(n, spec.dim);
  Vector psi(spec.shared_rank);
  Vector noise(spec.dim);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < spec.shared_rank; ++j) psi(j) = spec.background_coeff_std(j) * normal(rng);
    for (Index j = 0; j < spec.dim; ++j) noise(j) = spec.noise_std * normal(rng);
    rows.row(i) = (spec.background_mean + spec.shared_basis * psi + noise).transpose();
  }
  return DataMatrix(std::move(rows));
}

DataMatrix gen_target(const FactorModelSpec& spec, Index m, std::span<const Vector> cluster_offsets) {
  validate(spec);
  const Index clusters = static_cast<Index>(cluster_offsets.size());
  if (clusters < 1 || m < clusters) {
    std::ostringstream msg;
    msg << "target needs at least one cluster and one sample per cluster (m=" << m
        << ", clusters=" << clusters << ")";
    throw Error(ErrorCode::kInvalidInput, msg.str());
  }
  for (const Vector& offset : cluster_offsets) {
    if (offset.size() != spec.specific_rank) {
      std::ostringstream msg;
      msg << "cluster offset has " << offset.size() << " entries, specific rank is " << spec.specific_rank;
      throw Error(ErrorCode::kDimension, msg.str());
    }
    if (!offset.allFinite()) throw Error(ErrorCode::kInvalidInput, "cluster offsets must be finite");
  }

  auto rng = make_rng(spec.seed, Stream::kTarget);
  std::normal_distribution<double> normal(0.0, 1.0);

  Labels labels(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) labels[i] = i % clusters;
  std::shuffle(labels.begin(), labels.end(), rng);

  RowMatrix rows(m, spec.dim);
  Vector shared(spec.shared_rank);
  Vector specific(spec.specific_rank);
  Vector noise(spec.dim);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < spec.shared_rank; ++j) shared(j) = spec.shared_coeff_std(j) * normal(rng);
    const Vector& offset = cluster_offsets[static_cast<std::size_t>(labels[i])];
    for (Index j = 0; j < spec.specific_rank; ++j) {
      specific(j) = offset(j) + spec.specific_coeff_std(j) * normal(rng);
    }
    for (Index j = 0; j < spec.dim; ++j) noise(j) = spec.noise_std * normal(rng);
    rows.row(i) =
        (spec.target_mean + spec.shared_basis * shared + spec.specific_basis * specific + noise).transpose();
  }
  return DataMatrix(std::move(rows), std::move(labels));
}

LabeledDataset gen_dataset(const FactorModelSpec& spec, Index m, Index n,
                           std::span<const Vector> cluster_offsets) {
  return LabeledDataset{gen_target(spec, m, cluster_offsets), gen_background(spec, n), spec};
}

}  // namespace dpca
