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

#include "dpca/dpca.h"

#include <new>
#include <string>
#include <vector>

#include "dpca/evaluation.hpp"
#include "dpca/model_io.hpp"

struct dpca_data {
  dpca::DataMatrix value;
};

struct dpca_covariance {
  dpca::CovarianceEstimate value;
};

struct dpca_model {
  dpca::ModelFile file;
};

struct dpca_alpha_selection {
  dpca::AlphaSelection value;
};

struct dpca_factor_spec {
  dpca::FactorModelSpec value;
};

namespace {

thread_local std::string g_last_error;

dpca_status to_status(dpca::ErrorCode code) {
  switch (code) {
    case dpca::ErrorCode::kInvalidInput: return DPCA_ERR_INVALID_INPUT;
    case dpca::ErrorCode::kSymmetryViolation: return DPCA_ERR_SYMMETRY;
    case dpca::ErrorCode::kDimension: return DPCA_ERR_DIMENSION;
    case dpca::ErrorCode::kRankZero: return DPCA_ERR_RANK_ZERO;
    case dpca::ErrorCode::kNonConvergence: return DPCA_ERR_NON_CONVERGENCE;
    case dpca::ErrorCode::kSelection: return DPCA_ERR_SELECTION;
    case dpca::ErrorCode::kWrongMethod: return DPCA_ERR_WRONG_METHOD;
    case dpca::ErrorCode::kIo: return DPCA_ERR_IO;
    case dpca::ErrorCode::kParse: return DPCA_ERR_PARSE;
  }
  return DPCA_ERR_INTERNAL;
}

dpca_status fail(dpca_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <class Fn>
dpca_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return DPCA_OK;
  } catch (const dpca::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(DPCA_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(DPCA_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(DPCA_ERR_INTERNAL, "unknown failure");
  }
}

template <class... Ptrs>
void require(const Ptrs*... ptrs) {
  if (((ptrs == nullptr) || ...)) throw dpca::Error(dpca::ErrorCode::kInvalidInput, "null argument");
}

void check_len(size_t len, dpca::Index needed) {
  if (len < static_cast<size_t>(needed)) {
    throw dpca::Error(dpca::ErrorCode::kDimension,
                      "output buffer holds " + std::to_string(len) + " elements, need " +
                          std::to_string(needed));
  }
}

// Row-major copy so callers see the same layout they pass in.
void copy_out(const dpca::Matrix& m, double* out, size_t len) {
  check_len(len, m.size());
  Eigen::Map<dpca::RowMatrix>(out, m.rows(), m.cols()) = m;
}

void copy_out(const dpca::Vector& v, double* out, size_t len) {
  check_len(len, v.size());
  Eigen::Map<dpca::Vector>(out, v.size()) = v;
}

dpca::Matrix read_square(size_t dim, const double* values) {
  return Eigen::Map<const dpca::RowMatrix>(values, static_cast<dpca::Index>(dim),
                                           static_cast<dpca::Index>(dim));
}

dpca_model* wrap(dpca::ComponentModel model) { return new dpca_model{dpca::ModelFile{std::move(model), {}, {}}}; }

}  // namespace

template <class... Ptrs>
static bool all_nonnull(const Ptrs*... ptrs) {
  return ((ptrs != nullptr) && ...);
}

// Null pointers are reported separately from malformed inputs.
#define DPCA_REQUIRE(...)                                                               \
  do {                                                                                  \
    if (!all_nonnull(__VA_ARGS__)) return fail(DPCA_ERR_NULL_ARGUMENT, "null argument"); \
  } while (0)

extern "C" {

const char* dpca_version(void) { return "1.0.0"; }

const char* dpca_status_string(dpca_status status) {
  switch (status) {
    case DPCA_OK: return "ok";
    case DPCA_ERR_NULL_ARGUMENT: return "null argument";
    case DPCA_ERR_INVALID_INPUT: return "invalid input";
    case DPCA_ERR_SYMMETRY: return "symmetry violation";
    case DPCA_ERR_DIMENSION: return "dimension error";
    case DPCA_ERR_RANK_ZERO: return "rank-zero matrix";
    case DPCA_ERR_NON_CONVERGENCE: return "non-convergence";
    case DPCA_ERR_SELECTION: return "selection error";
    case DPCA_ERR_WRONG_METHOD: return "wrong method";
    case DPCA_ERR_IO: return "i/o error";
    case DPCA_ERR_PARSE: return "parse error";
    case DPCA_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* dpca_last_error(void) { return g_last_error.c_str(); }

// ---- sample sets

dpca_status dpca_data_create(size_t rows, size_t cols, const double* values, const int64_t* labels,
                             dpca_data** out) {
  DPCA_REQUIRE(values, out);
  return guarded([&] {
    const auto r = static_cast<dpca::Index>(rows);
    const auto c = static_cast<dpca::Index>(cols);
    dpca::RowMatrix m = Eigen::Map<const dpca::RowMatrix>(values, r, c);
    std::optional<dpca::Labels> tags;
    if (labels) tags = dpca::Labels(labels, labels + rows);
    *out = new dpca_data{dpca::DataMatrix(std::move(m), std::move(tags))};
  });
}

void dpca_data_free(dpca_data* data) { delete data; }

size_t dpca_data_rows(const dpca_data* data) { return data ? static_cast<size_t>(data->value.samples()) : 0; }

size_t dpca_data_cols(const dpca_data* data) { return data ? static_cast<size_t>(data->value.features()) : 0; }

int dpca_data_has_labels(const dpca_data* data) { return data && data->value.labels().has_value() ? 1 : 0; }

dpca_status dpca_data_values(const dpca_data* data, double* out, size_t len) {
  DPCA_REQUIRE(data, out);
  return guarded([&] {
    const dpca::RowMatrix& v = data->value.values();
    check_len(len, v.size());
    Eigen::Map<dpca::RowMatrix>(out, v.rows(), v.cols()) = v;
  });
}

dpca_status dpca_data_labels(const dpca_data* data, int64_t* out, size_t len) {
  DPCA_REQUIRE(data, out);
  return guarded([&] {
    const auto& labels = data->value.labels();
    if (!labels) throw dpca::Error(dpca::ErrorCode::kInvalidInput, "data set has no labels");
    check_len(len, static_cast<dpca::Index>(labels->size()));
    std::copy(labels->begin(), labels->end(), out);
  });
}

dpca_status dpca_data_concat(const dpca_data* const* parts, size_t count, dpca_data** out) {
  DPCA_REQUIRE(parts, out);
  return guarded([&] {
    std::vector<dpca::DataMatrix> items;
    items.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      require(parts[i]);
      items.push_back(parts[i]->value);
    }
    *out = new dpca_data{dpca::concat_rows(items)};
  });
}

// ---- covariance

dpca_status dpca_covariance_from_data(const dpca_data* raw, double ridge, dpca_covariance** out) {
  DPCA_REQUIRE(raw, out);
  return guarded([&] {
    *out = new dpca_covariance{dpca::sample_covariance(dpca::center(raw->value), ridge)};
  });
}

dpca_status dpca_covariance_from_matrix(size_t dim, const double* values, dpca_covariance** out) {
  DPCA_REQUIRE(values, out);
  return guarded([&] {
    dpca::SymMatrix m(read_square(dim, values));
    const auto n = m.dim();
    *out = new dpca_covariance{dpca::CovarianceEstimate{std::move(m), 0, 0.0, dpca::Vector::Zero(n)}};
  });
}

void dpca_covariance_free(dpca_covariance* cov) { delete cov; }

size_t dpca_covariance_dim(const dpca_covariance* cov) {
  return cov ? static_cast<size_t>(cov->value.matrix.dim()) : 0;
}

dpca_status dpca_covariance_matrix(const dpca_covariance* cov, double* out, size_t len) {
  DPCA_REQUIRE(cov, out);
  return guarded([&] { copy_out(cov->value.matrix.matrix(), out, len); });
}

dpca_status dpca_covariance_mean(const dpca_covariance* cov, double* out, size_t len) {
  DPCA_REQUIRE(cov, out);
  return guarded([&] { copy_out(cov->value.mean, out, len); });
}

// ---- fitting

dpca_status dpca_fit_pca(const dpca_covariance* cxx, size_t d, dpca_model** out) {
  DPCA_REQUIRE(cxx, out);
  return guarded([&] { *out = wrap(dpca::pca_fit(cxx->value, static_cast<dpca::Index>(d))); });
}

dpca_status dpca_fit_dpca(const dpca_covariance* cxx, const dpca_covariance* cyy, size_t d,
                          double floor_rel, int orthonormalize, dpca_model** out) {
  DPCA_REQUIRE(cxx, cyy, out);
  return guarded([&] {
    dpca::DpcaOptions options{floor_rel, orthonormalize != 0};
    *out = wrap(dpca::dpca_fit(cxx->value, cyy->value, static_cast<dpca::Index>(d), options));
  });
}

dpca_status dpca_fit_dpca_whitened(const dpca_covariance* cxx, const dpca_covariance* cyy, size_t d,
                                   double floor_rel, dpca_model** out) {
  DPCA_REQUIRE(cxx, cyy, out);
  return guarded([&] {
    *out = wrap(dpca::dpca_fit_whitened(cxx->value, cyy->value, static_cast<dpca::Index>(d), floor_rel));
  });
}

dpca_status dpca_fit_cpca(const dpca_covariance* cxx, const dpca_covariance* cyy, double alpha,
                          size_t d, dpca_model** out) {
  DPCA_REQUIRE(cxx, cyy, out);
  return guarded([&] {
    *out = wrap(dpca::cpca_fit(cxx->value, cyy->value, alpha, static_cast<dpca::Index>(d)));
  });
}

dpca_status dpca_log_grid(double lo, double hi, size_t count, double* out) {
  DPCA_REQUIRE(out);
  return guarded([&] {
    const auto grid = dpca::log_grid(lo, hi, static_cast<int>(count));
    std::copy(grid.begin(), grid.end(), out);
  });
}

dpca_status dpca_select_alphas(const dpca_covariance* cxx, const dpca_covariance* cyy,
                               const double* grid, size_t grid_len, size_t d, size_t n_select,
                               uint64_t seed, dpca_alpha_selection** out) {
  DPCA_REQUIRE(cxx, cyy, grid, out);
  return guarded([&] {
    *out = new dpca_alpha_selection{dpca::cpca_select_alphas(
        cxx->value, cyy->value, std::span<const double>(grid, grid_len), static_cast<dpca::Index>(d),
        static_cast<dpca::Index>(n_select), seed)};
  });
}

void dpca_alpha_selection_free(dpca_alpha_selection* selection) { delete selection; }

size_t dpca_alpha_selection_grid_size(const dpca_alpha_selection* selection) {
  return selection ? selection->value.grid.size() : 0;
}

size_t dpca_alpha_selection_count(const dpca_alpha_selection* selection) {
  return selection ? selection->value.selected.size() : 0;
}

dpca_status dpca_alpha_selection_selected(const dpca_alpha_selection* selection, double* out, size_t len) {
  DPCA_REQUIRE(selection, out);
  return guarded([&] {
    const auto& s = selection->value.selected;
    check_len(len, static_cast<dpca::Index>(s.size()));
    std::copy(s.begin(), s.end(), out);
  });
}

dpca_status dpca_alpha_selection_affinity(const dpca_alpha_selection* selection, double* out, size_t len) {
  DPCA_REQUIRE(selection, out);
  return guarded([&] { copy_out(selection->value.affinity, out, len); });
}

dpca_status dpca_alpha_selection_assignment(const dpca_alpha_selection* selection, int32_t* out,
                                            size_t len) {
  DPCA_REQUIRE(selection, out);
  return guarded([&] {
    const auto& a = selection->value.cluster_assignment;
    check_len(len, static_cast<dpca::Index>(a.size()));
    std::copy(a.begin(), a.end(), out);
  });
}

// ---- models

void dpca_model_free(dpca_model* model) { delete model; }

dpca_method dpca_model_method(const dpca_model* model) {
  if (!model) return DPCA_METHOD_PCA;
  switch (model->file.model.method) {
    case dpca::Method::kPca: return DPCA_METHOD_PCA;
    case dpca::Method::kCpca: return DPCA_METHOD_CPCA;
    case dpca::Method::kDpca: return DPCA_METHOD_DPCA;
  }
  return DPCA_METHOD_PCA;
}

size_t dpca_model_dim(const dpca_model* model) { return model ? static_cast<size_t>(model->file.model.dim()) : 0; }

size_t dpca_model_count(const dpca_model* model) {
  return model ? static_cast<size_t>(model->file.model.count()) : 0;
}

dpca_status dpca_model_alpha(const dpca_model* model, double* out) {
  DPCA_REQUIRE(model, out);
  if (!model->file.model.alpha) return fail(DPCA_ERR_WRONG_METHOD, "only cpca models carry alpha");
  *out = *model->file.model.alpha;
  return DPCA_OK;
}

dpca_status dpca_model_components(const dpca_model* model, double* out, size_t len) {
  DPCA_REQUIRE(model, out);
  return guarded([&] { copy_out(model->file.model.components, out, len); });
}

dpca_status dpca_model_eigenvalues(const dpca_model* model, double* out, size_t len) {
  DPCA_REQUIRE(model, out);
  return guarded([&] { copy_out(model->file.model.eigenvalues, out, len); });
}

dpca_status dpca_model_target_mean(const dpca_model* model, double* out, size_t len) {
  DPCA_REQUIRE(model, out);
  return guarded([&] { copy_out(model->file.model.target_mean, out, len); });
}

int dpca_model_floor_applied(const dpca_model* model) {
  return model && model->file.model.regularization.floor_applied ? 1 : 0;
}

dpca_status dpca_model_set_feature_scale(dpca_model* model, const double* scale, size_t len) {
  DPCA_REQUIRE(model, scale);
  return guarded([&] {
    if (len != static_cast<size_t>(model->file.model.dim())) {
      throw dpca::Error(dpca::ErrorCode::kDimension, "feature scale length differs from model dimension");
    }
    dpca::Vector s = Eigen::Map<const dpca::Vector>(scale, static_cast<dpca::Index>(len));
    if (!s.allFinite() || (s.array() <= 0.0).any()) {
      throw dpca::Error(dpca::ErrorCode::kInvalidInput, "feature scales must be finite and positive");
    }
    model->file.feature_scale = std::move(s);
  });
}

int dpca_model_has_feature_scale(const dpca_model* model) {
  return model && model->file.feature_scale.has_value() ? 1 : 0;
}

dpca_status dpca_model_feature_scale(const dpca_model* model, double* out, size_t len) {
  DPCA_REQUIRE(model, out);
  return guarded([&] {
    if (!model->file.feature_scale) throw dpca::Error(dpca::ErrorCode::kInvalidInput, "model has no feature scale");
    copy_out(*model->file.feature_scale, out, len);
  });
}

dpca_status dpca_model_set_provenance(dpca_model* model, const char* key, const char* value) {
  DPCA_REQUIRE(model, key, value);
  return guarded([&] { model->file.provenance[key] = value; });
}

const char* dpca_model_provenance(const dpca_model* model, const char* key) {
  if (!model || !key) return nullptr;
  const auto it = model->file.provenance.find(key);
  return it == model->file.provenance.end() ? nullptr : it->second.c_str();
}

dpca_status dpca_model_save(const dpca_model* model, const char* path) {
  DPCA_REQUIRE(model, path);
  return guarded([&] { dpca::save_model(model->file, path); });
}

dpca_status dpca_model_load(const char* path, dpca_model** out) {
  DPCA_REQUIRE(path, out);
  return guarded([&] { *out = new dpca_model{dpca::load_model(path)}; });
}

dpca_status dpca_transform(const dpca_model* model, const dpca_data* raw, dpca_data** out) {
  DPCA_REQUIRE(model, raw, out);
  return guarded([&] {
    const dpca::ModelFile& file = model->file;
    auto project = [&]() {
      if (!file.feature_scale) return dpca::transform(file.model, raw->value);
      if (raw->value.features() != file.feature_scale->size()) {
        throw dpca::Error(dpca::ErrorCode::kDimension, "data feature count differs from the model");
      }
      dpca::RowMatrix scaled = raw->value.values().array().rowwise() / file.feature_scale->transpose().array();
      return dpca::transform(file.model, dpca::DataMatrix(std::move(scaled), raw->value.labels()));
    };
    dpca::EmbeddingResult result = project();
    *out = new dpca_data{dpca::DataMatrix(std::move(result.coordinates), std::move(result.labels))};
  });
}

dpca_status dpca_pencil_residual(const dpca_model* model, const dpca_covariance* cxx,
                                 const dpca_covariance* cyy, double* out) {
  DPCA_REQUIRE(model, cxx, cyy, out);
  return guarded([&] { *out = dpca::pencil_residual(model->file.model, cxx->value, cyy->value); });
}

// ---- evaluation

dpca_status dpca_kmeans_accuracy(const dpca_data* embedding, uint64_t seed, double* out) {
  DPCA_REQUIRE(embedding, out);
  return guarded([&] {
    if (!embedding->value.labels()) throw dpca::Error(dpca::ErrorCode::kInvalidInput, "embedding has no labels");
    *out = dpca::kmeans_accuracy(embedding->value.values(), *embedding->value.labels(), seed);
  });
}

dpca_status dpca_silhouette(const dpca_data* embedding, double* out) {
  DPCA_REQUIRE(embedding, out);
  return guarded([&] {
    if (!embedding->value.labels()) throw dpca::Error(dpca::ErrorCode::kInvalidInput, "embedding has no labels");
    *out = dpca::silhouette(embedding->value.values(), *embedding->value.labels());
  });
}

// ---- synthetic factor models

dpca_status dpca_factor_spec_create(const dpca_factor_options* options, dpca_factor_spec** out) {
  DPCA_REQUIRE(options, out);
  return guarded([&] {
    const size_t k = options->shared_rank;
    const size_t ds = options->specific_rank;
    if ((k > 0 && (!options->background_coeff_std || !options->shared_coeff_std)) ||
        (ds > 0 && !options->specific_coeff_std)) {
      throw dpca::Error(dpca::ErrorCode::kInvalidInput, "coefficient std arrays are required");
    }
    dpca::FactorModelOptions o;
    o.dim = static_cast<dpca::Index>(options->dim);
    o.shared_rank = static_cast<dpca::Index>(k);
    o.specific_rank = static_cast<dpca::Index>(ds);
    if (k > 0) {
      o.background_coeff_std.assign(options->background_coeff_std, options->background_coeff_std + k);
      o.shared_coeff_std.assign(options->shared_coeff_std, options->shared_coeff_std + k);
    }
    if (ds > 0) o.specific_coeff_std.assign(options->specific_coeff_std, options->specific_coeff_std + ds);
    o.noise_std = options->noise_std;
    o.mean_scale = options->mean_scale;
    o.seed = options->seed;
    *out = new dpca_factor_spec{dpca::make_factor_spec(o)};
  });
}

void dpca_factor_spec_free(dpca_factor_spec* spec) { delete spec; }

size_t dpca_factor_spec_dim(const dpca_factor_spec* spec) { return spec ? static_cast<size_t>(spec->value.dim) : 0; }

size_t dpca_factor_spec_shared_rank(const dpca_factor_spec* spec) {
  return spec ? static_cast<size_t>(spec->value.shared_rank) : 0;
}

size_t dpca_factor_spec_specific_rank(const dpca_factor_spec* spec) {
  return spec ? static_cast<size_t>(spec->value.specific_rank) : 0;
}

dpca_status dpca_factor_spec_shared_basis(const dpca_factor_spec* spec, double* out, size_t len) {
  DPCA_REQUIRE(spec, out);
  return guarded([&] { copy_out(spec->value.shared_basis, out, len); });
}

dpca_status dpca_factor_spec_specific_basis(const dpca_factor_spec* spec, double* out, size_t len) {
  DPCA_REQUIRE(spec, out);
  return guarded([&] { copy_out(spec->value.specific_basis, out, len); });
}

dpca_status dpca_factor_spec_save(const dpca_factor_spec* spec, const char* path) {
  DPCA_REQUIRE(spec, path);
  return guarded([&] { dpca::save_spec(spec->value, path); });
}

dpca_status dpca_factor_spec_load(const char* path, dpca_factor_spec** out) {
  DPCA_REQUIRE(path, out);
  return guarded([&] { *out = new dpca_factor_spec{dpca::load_spec(path)}; });
}

dpca_status dpca_gen_background(const dpca_factor_spec* spec, size_t n, dpca_data** out) {
  DPCA_REQUIRE(spec, out);
  return guarded([&] { *out = new dpca_data{dpca::gen_background(spec->value, static_cast<dpca::Index>(n))}; });
}

dpca_status dpca_gen_target(const dpca_factor_spec* spec, size_t m, const double* offsets, size_t clusters,
                            dpca_data** out) {
  DPCA_REQUIRE(spec, out);
  return guarded([&] {
    const dpca::Index ds = spec->value.specific_rank;
    if (clusters > 0 && ds > 0) require(offsets);
    std::vector<dpca::Vector> items;
    for (size_t c = 0; c < clusters; ++c) {
      items.push_back(ds > 0 ? dpca::Vector(Eigen::Map<const dpca::Vector>(offsets + c * ds, ds))
                             : dpca::Vector());
    }
    *out = new dpca_data{dpca::gen_target(spec->value, static_cast<dpca::Index>(m), items)};
  });
}

// ---- eigen primitives

dpca_status dpca_generalized_eig(size_t dim, const double* a, const double* b, size_t d, double floor_rel,
                                 double* eigenvalues, double* eigenvectors) {
  DPCA_REQUIRE(a, b, eigenvalues, eigenvectors);
  return guarded([&] {
    const auto pairs = dpca::generalized_eig(dpca::SymMatrix(read_square(dim, a)),
                                             dpca::SymMatrix(read_square(dim, b)),
                                             static_cast<dpca::Index>(d), floor_rel);
    copy_out(pairs.eigenvalues, eigenvalues, d);
    copy_out(pairs.eigenvectors, eigenvectors, dim * d);
  });
}

dpca_status dpca_power_topd(size_t dim, dpca_apply_fn apply, void* context, size_t d, double tol,
                            int max_iter, uint64_t seed, double* eigenvalues, double* eigenvectors) {
  if (!apply) return fail(DPCA_ERR_NULL_ARGUMENT, "null argument");
  DPCA_REQUIRE(eigenvalues, eigenvectors);
  return guarded([&] {
    const auto n = static_cast<dpca::Index>(dim);
    const dpca::LinearOperator op = [&](const dpca::Vector& x) {
      dpca::Vector y(n);
      apply(x.data(), y.data(), dim, context);
      return y;
    };
    const auto pairs =
        dpca::power_topd(op, n, static_cast<dpca::Index>(d), dpca::PowerOptions{tol, max_iter, seed});
    copy_out(pairs.eigenvalues, eigenvalues, d);
    copy_out(pairs.eigenvectors, eigenvectors, dim * d);
  });
}

uint64_t dpca_pencil_solve_count(void) { return dpca::pencil_solve_count(); }

void dpca_reset_pencil_solve_count(void) { dpca::reset_pencil_solve_count(); }

}  // extern "C"
