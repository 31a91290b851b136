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

/*
 * C interface to the dpca library.
 *
 * Objects are opaque handles created by dpca_*_create / dpca_fit_* style
 * functions and released with the matching *_free function (free functions
 * accept NULL). Every fallible call returns a dpca_status; on failure a
 * one-line message is available from dpca_last_error() on the same thread.
 *
 * Matrices cross the boundary as dense row-major double arrays. Copy-out
 * functions take the destination length in elements and fail with
 * DPCA_ERR_DIMENSION when it is too small.
 */
#ifndef DPCA_DPCA_H_
#define DPCA_DPCA_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(DPCA_BUILDING_LIBRARY)
#    define DPCA_API __declspec(dllexport)
#  else
#    define DPCA_API __declspec(dllimport)
#  endif
#else
#  define DPCA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dpca_status {
  DPCA_OK = 0,
  DPCA_ERR_NULL_ARGUMENT = 1,
  DPCA_ERR_INVALID_INPUT = 2,
  DPCA_ERR_SYMMETRY = 3,
  DPCA_ERR_DIMENSION = 4,
  DPCA_ERR_RANK_ZERO = 5,
  DPCA_ERR_NON_CONVERGENCE = 6,
  DPCA_ERR_SELECTION = 7,
  DPCA_ERR_WRONG_METHOD = 8,
  DPCA_ERR_IO = 9,
  DPCA_ERR_PARSE = 10,
  DPCA_ERR_INTERNAL = 11
} dpca_status;

typedef enum dpca_method {
  DPCA_METHOD_PCA = 0,
  DPCA_METHOD_CPCA = 1,
  DPCA_METHOD_DPCA = 2
} dpca_method;

typedef struct dpca_data dpca_data;
typedef struct dpca_covariance dpca_covariance;
typedef struct dpca_model dpca_model;
typedef struct dpca_alpha_selection dpca_alpha_selection;
typedef struct dpca_factor_spec dpca_factor_spec;

DPCA_API const char* dpca_version(void);
DPCA_API const char* dpca_status_string(dpca_status status);
DPCA_API const char* dpca_last_error(void);

/* ---- sample sets ------------------------------------------------------ */

/* labels may be NULL. */
DPCA_API dpca_status dpca_data_create(size_t rows, size_t cols, const double* values,
                                      const int64_t* labels, dpca_data** out);
DPCA_API void dpca_data_free(dpca_data* data);
DPCA_API size_t dpca_data_rows(const dpca_data* data);
DPCA_API size_t dpca_data_cols(const dpca_data* data);
DPCA_API int dpca_data_has_labels(const dpca_data* data);
DPCA_API dpca_status dpca_data_values(const dpca_data* data, double* out, size_t len);
DPCA_API dpca_status dpca_data_labels(const dpca_data* data, int64_t* out, size_t len);
/* Row-wise concatenation, used to merge several background sets. */
DPCA_API dpca_status dpca_data_concat(const dpca_data* const* parts, size_t count, dpca_data** out);

/* ---- covariance ------------------------------------------------------- */

/* Centers the samples and forms (1/m) X^T X + ridge I. */
DPCA_API dpca_status dpca_covariance_from_data(const dpca_data* raw, double ridge,
                                               dpca_covariance** out);
DPCA_API dpca_status dpca_covariance_from_matrix(size_t dim, const double* values,
                                                 dpca_covariance** out);
DPCA_API void dpca_covariance_free(dpca_covariance* cov);
DPCA_API size_t dpca_covariance_dim(const dpca_covariance* cov);
DPCA_API dpca_status dpca_covariance_matrix(const dpca_covariance* cov, double* out, size_t len);
DPCA_API dpca_status dpca_covariance_mean(const dpca_covariance* cov, double* out, size_t len);

/* ---- fitting ---------------------------------------------------------- */

DPCA_API dpca_status dpca_fit_pca(const dpca_covariance* cxx, size_t d, dpca_model** out);
DPCA_API dpca_status dpca_fit_dpca(const dpca_covariance* cxx, const dpca_covariance* cyy, size_t d,
                                   double floor_rel, int orthonormalize, dpca_model** out);
DPCA_API dpca_status dpca_fit_dpca_whitened(const dpca_covariance* cxx, const dpca_covariance* cyy,
                                            size_t d, double floor_rel, dpca_model** out);
DPCA_API dpca_status dpca_fit_cpca(const dpca_covariance* cxx, const dpca_covariance* cyy,
                                   double alpha, size_t d, dpca_model** out);

DPCA_API dpca_status dpca_log_grid(double lo, double hi, size_t count, double* out);
DPCA_API dpca_status dpca_select_alphas(const dpca_covariance* cxx, const dpca_covariance* cyy,
                                        const double* grid, size_t grid_len, size_t d,
                                        size_t n_select, uint64_t seed,
                                        dpca_alpha_selection** out);
DPCA_API void dpca_alpha_selection_free(dpca_alpha_selection* selection);
DPCA_API size_t dpca_alpha_selection_grid_size(const dpca_alpha_selection* selection);
DPCA_API size_t dpca_alpha_selection_count(const dpca_alpha_selection* selection);
DPCA_API dpca_status dpca_alpha_selection_selected(const dpca_alpha_selection* selection,
                                                   double* out, size_t len);
DPCA_API dpca_status dpca_alpha_selection_affinity(const dpca_alpha_selection* selection,
                                                   double* out, size_t len);
DPCA_API dpca_status dpca_alpha_selection_assignment(const dpca_alpha_selection* selection,
                                                     int32_t* out, size_t len);

/* ---- models ----------------------------------------------------------- */

DPCA_API void dpca_model_free(dpca_model* model);
DPCA_API dpca_method dpca_model_method(const dpca_model* model);
DPCA_API size_t dpca_model_dim(const dpca_model* model);
DPCA_API size_t dpca_model_count(const dpca_model* model);
/* DPCA_ERR_WRONG_METHOD unless the model is cpca. */
DPCA_API dpca_status dpca_model_alpha(const dpca_model* model, double* out);
/* D x d, row-major. */
DPCA_API dpca_status dpca_model_components(const dpca_model* model, double* out, size_t len);
DPCA_API dpca_status dpca_model_eigenvalues(const dpca_model* model, double* out, size_t len);
DPCA_API dpca_status dpca_model_target_mean(const dpca_model* model, double* out, size_t len);
DPCA_API int dpca_model_floor_applied(const dpca_model* model);

/* Per-feature divisor applied by dpca_transform before centering. */
DPCA_API dpca_status dpca_model_set_feature_scale(dpca_model* model, const double* scale, size_t len);
DPCA_API int dpca_model_has_feature_scale(const dpca_model* model);
DPCA_API dpca_status dpca_model_feature_scale(const dpca_model* model, double* out, size_t len);

DPCA_API dpca_status dpca_model_set_provenance(dpca_model* model, const char* key, const char* value);
/* NULL when the key is absent; the string lives as long as the model. */
DPCA_API const char* dpca_model_provenance(const dpca_model* model, const char* key);

DPCA_API dpca_status dpca_model_save(const dpca_model* model, const char* path);
DPCA_API dpca_status dpca_model_load(const char* path, dpca_model** out);

/* m x d coordinates; labels are passed through. */
DPCA_API dpca_status dpca_transform(const dpca_model* model, const dpca_data* raw, dpca_data** out);
DPCA_API dpca_status dpca_pencil_residual(const dpca_model* model, const dpca_covariance* cxx,
                                          const dpca_covariance* cyy, double* out);

/* ---- evaluation ------------------------------------------------------- */

/* Both need a labelled embedding and use its first two columns. */
DPCA_API dpca_status dpca_kmeans_accuracy(const dpca_data* embedding, uint64_t seed, double* out);
DPCA_API dpca_status dpca_silhouette(const dpca_data* embedding, double* out);

/* ---- synthetic factor models ------------------------------------------ */

typedef struct dpca_factor_options {
  size_t dim;
  size_t shared_rank;
  size_t specific_rank;
  const double* background_coeff_std; /* shared_rank entries */
  const double* shared_coeff_std;     /* shared_rank entries */
  const double* specific_coeff_std;   /* specific_rank entries */
  double noise_std;
  double mean_scale;
  uint64_t seed;
} dpca_factor_options;

DPCA_API dpca_status dpca_factor_spec_create(const dpca_factor_options* options,
                                             dpca_factor_spec** out);
DPCA_API void dpca_factor_spec_free(dpca_factor_spec* spec);
DPCA_API size_t dpca_factor_spec_dim(const dpca_factor_spec* spec);
DPCA_API size_t dpca_factor_spec_shared_rank(const dpca_factor_spec* spec);
DPCA_API size_t dpca_factor_spec_specific_rank(const dpca_factor_spec* spec);
DPCA_API dpca_status dpca_factor_spec_shared_basis(const dpca_factor_spec* spec, double* out, size_t len);
DPCA_API dpca_status dpca_factor_spec_specific_basis(const dpca_factor_spec* spec, double* out,
                                                     size_t len);
DPCA_API dpca_status dpca_factor_spec_save(const dpca_factor_spec* spec, const char* path);
DPCA_API dpca_status dpca_factor_spec_load(const char* path, dpca_factor_spec** out);

DPCA_API dpca_status dpca_gen_background(const dpca_factor_spec* spec, size_t n, dpca_data** out);
/* offsets: clusters x specific_rank, row-major. */
DPCA_API dpca_status dpca_gen_target(const dpca_factor_spec* spec, size_t m, const double* offsets,
                                     size_t clusters, dpca_data** out);

/* ---- eigen primitives ------------------------------------------------- */

/* a, b: dim x dim row-major. eigenvectors: dim x d row-major. */
DPCA_API dpca_status dpca_generalized_eig(size_t dim, const double* a, const double* b, size_t d,
                                          double floor_rel, double* eigenvalues,
                                          double* eigenvectors);

typedef void (*dpca_apply_fn)(const double* in, double* out, size_t dim, void* context);

DPCA_API dpca_status dpca_power_topd(size_t dim, dpca_apply_fn apply, void* context, size_t d,
                                     double tol, int max_iter, uint64_t seed, double* eigenvalues,
                                     double* eigenvectors);

DPCA_API uint64_t dpca_pencil_solve_count(void);
DPCA_API void dpca_reset_pencil_solve_count(void);

#ifdef __cplusplus
}
#endif

#endif /* DPCA_DPCA_H_ */
