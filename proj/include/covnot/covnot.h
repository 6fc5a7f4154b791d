/*
 * Copyright 2026 The covnot Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to libcovnot.
 *
 * Every fallible call returns a covnot_status. On failure a description is
 * available from covnot_last_error_message() on the calling thread until the
 * next failing call. Operators are 4x4, row-major, in the basis
 * |uu>, |ud>, |du>, |dd>.
 */

#ifndef COVNOT_COVNOT_H_
#define COVNOT_COVNOT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(COVNOT_BUILDING_LIBRARY)
#define COVNOT_API __attribute__((visibility("default")))
#else
#define COVNOT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum covnot_status {
  COVNOT_OK = 0,
  COVNOT_ERR_INVALID_ARGUMENT = 1,
  COVNOT_ERR_OUT_OF_RANGE = 2,
  COVNOT_ERR_NOT_CP = 3,
  COVNOT_ERR_NOT_COVARIANT = 4,
  COVNOT_ERR_NOT_TRACE_PRESERVING = 5,
  COVNOT_ERR_NON_UNIT_NORM = 6,
  COVNOT_ERR_MIXED_FAMILIES = 7,
  COVNOT_ERR_NULL_POINTER = 8,
  COVNOT_ERR_INTERNAL = 9
} covnot_status;

typedef struct covnot_params {
  double V;
  double X;
  double Y;
} covnot_params;

typedef struct covnot_complex {
  double re;
  double im;
} covnot_complex;

typedef struct covnot_op4 {
  covnot_complex m[16];
} covnot_op4;

typedef struct covnot_rng covnot_rng;
typedef struct covnot_kraus covnot_kraus;

COVNOT_API const char* covnot_version(void);
COVNOT_API const char* covnot_status_name(covnot_status status);
COVNOT_API const char* covnot_last_error_message(void);
/* Worker cap used by parallel routines (COVNOT_THREADS or hardware). */
COVNOT_API size_t covnot_thread_cap(void);

/* ---- random streams ---------------------------------------------------- */

COVNOT_API covnot_status covnot_rng_create(uint64_t seed, uint64_t stream,
                                           covnot_rng** out);
COVNOT_API void covnot_rng_destroy(covnot_rng* rng);

/* ---- covariant channels ------------------------------------------------ */

COVNOT_API covnot_status covnot_cp_check(covnot_params p, int* is_cp,
                                         double margins[4]);
/* Numerical Choi spectrum, ascending. */
COVNOT_API covnot_status covnot_choi_spectrum(covnot_params p,
                                              double eigenvalues[16]);
/* Distinct closed-form eigenvalues in margin order; multiplicities 1,3,3,9. */
COVNOT_API covnot_status covnot_choi_closed_form(covnot_params p,
                                                 double eigenvalues[4],
                                                 int multiplicities[4]);
/* Weights on identity, U_SEP, U_ME(1), U_ME(2). */
COVNOT_API covnot_status covnot_decompose(covnot_params p, double weights[4]);
COVNOT_API covnot_status covnot_reconstruct(const double weights[4],
                                            covnot_params* out);
/* (l_00, l_i0, l_0i, l_ij); no CP check. */
COVNOT_API covnot_status covnot_kraus_weights(covnot_params p,
                                              double weights[4]);
/* rho must be a density matrix and p completely positive. */
COVNOT_API covnot_status covnot_apply(covnot_params p, const covnot_op4* rho,
                                      covnot_op4* out);
COVNOT_API covnot_status covnot_apply_kraus(covnot_params p,
                                            const covnot_op4* rho,
                                            covnot_op4* out);

COVNOT_API covnot_params covnot_u_sep(void);
COVNOT_API covnot_params covnot_g_not(void);
COVNOT_API covnot_status covnot_u_me(double v, covnot_params* out);

/* ---- quantum NOT error ------------------------------------------------- */

typedef enum covnot_family {
  COVNOT_FAMILY_SEP_POINT = 0,
  COVNOT_FAMILY_LINE_SEGMENT = 1,
  COVNOT_FAMILY_ME_LINE = 2,
  COVNOT_FAMILY_INTERIOR_REGRESSION = 3
} covnot_family;

typedef struct covnot_error_report {
  double delta;
  covnot_params point;
  covnot_family family;
  double v_min;
  double v_max;
} covnot_error_report;

typedef struct covnot_numerical_optimum {
  covnot_error_report report;
  double grid_delta;
  covnot_params grid_point;
  size_t grid_points;
  unsigned active_mask;
  double kkt_violation;
} covnot_numerical_optimum;

COVNOT_API const char* covnot_family_name(covnot_family family);
COVNOT_API double covnot_alpha0(void);
COVNOT_API double covnot_alpha_max(void);
COVNOT_API covnot_status covnot_covariant_error(double Z, double Y,
                                                double alpha, double* out);
COVNOT_API covnot_status covnot_optimal_not(double alpha,
                                            covnot_error_report* out);
COVNOT_API covnot_status covnot_numerical_optimal_not(
    double alpha, covnot_numerical_optimum* out);
/* phi is a normalized 4-vector; rho any Hermitian operator. */
COVNOT_API covnot_status covnot_distance_to_complement(
    const covnot_op4* rho, const covnot_complex phi[4], double* out);
COVNOT_API covnot_status covnot_random_pure_state(double alpha,
                                                  covnot_rng* rng,
                                                  covnot_complex out[4]);

/* ---- perfect NOT for maximally entangled states ------------------------ */

typedef enum covnot_not_family {
  COVNOT_NOT_U = 0,
  COVNOT_NOT_V = 1
} covnot_not_family;

typedef struct covnot_relation {
  char name[64];
  int checked;
  int failed;
} covnot_relation;

/* magic is the real matrix in the magic basis, row-major. */
COVNOT_API covnot_status covnot_perfect_not(const double coeffs[3],
                                            covnot_not_family family,
                                            double magic[16],
                                            covnot_op4* computational);
/* Both coefficient sets given; exactly one may be nonzero (MIXED_FAMILIES
 * otherwise). */
COVNOT_API covnot_status covnot_perfect_not_mixed(const double u_coeffs[3],
                                                  const double v_coeffs[3],
                                                  double magic[16],
                                                  covnot_op4* computational);

/* Fills up to `capacity` relations; `count` receives the total. */
COVNOT_API covnot_status covnot_magic_check(covnot_relation* relations,
                                            size_t capacity, size_t* count,
                                            int* all_hold);

typedef struct covnot_perfect_not_probe {
  int operators;
  int states;
  double max_expectation; /* max |<phi|U|phi>| */
  double max_square_defect; /* max entry of |U^2 + I| */
  double max_unitarity_defect;
} covnot_perfect_not_probe;

/* Random unit coefficient vectors (alternating U and V families) tested on
 * Haar-random maximally entangled states. */
COVNOT_API covnot_status covnot_probe_perfect_not(
    int operators, int states, covnot_rng* rng, covnot_perfect_not_probe* out);

/* ---- Kraus channels and twirling --------------------------------------- */

/* Copies the operators; fails with NOT_TRACE_PRESERVING when
 * sum w_k K_k^dag K_k deviates from I by more than 1e-8. */
COVNOT_API covnot_status covnot_kraus_create(const double* weights,
                                             const covnot_op4* ops, size_t n,
                                             covnot_kraus** out);
COVNOT_API covnot_status covnot_kraus_from_params(covnot_params p,
                                                  covnot_kraus** out);
COVNOT_API covnot_status covnot_kraus_random(int rank, covnot_rng* rng,
                                             covnot_kraus** out);
COVNOT_API void covnot_kraus_destroy(covnot_kraus* kraus);
COVNOT_API size_t covnot_kraus_size(const covnot_kraus* kraus);
COVNOT_API covnot_status covnot_kraus_term(const covnot_kraus* kraus,
                                           size_t index, double* weight,
                                           covnot_op4* op);
COVNOT_API covnot_status covnot_kraus_apply(const covnot_kraus* kraus,
                                            const covnot_op4* rho,
                                            covnot_op4* out);
COVNOT_API covnot_status covnot_kraus_covariance(const covnot_kraus* kraus,
                                                 int trials, covnot_rng* rng,
                                                 double* max_deviation);

typedef struct covnot_twirl_report {
  covnot_params params;
  double residual;          /* Pi_{V,X,Y} vs averaged map */
  double covariance_deviation; /* check_covariance on averaged map */
  int is_cp;                /* margins >= -1e-10 */
  int is_cp_mc;             /* every facet within the MC tolerance */
  double margins[4];
  size_t samples;
  size_t tasks;
} covnot_twirl_report;

/* tasks = 0 selects the default task count. */
COVNOT_API covnot_status covnot_twirl_kraus(const covnot_kraus* kraus,
                                            size_t samples, size_t tasks,
                                            covnot_rng* rng,
                                            covnot_twirl_report* out);

#ifdef __cplusplus
}
#endif

#endif /* COVNOT_COVNOT_H_ */
