// Copyright 2026 The blindid Authors.
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

#ifndef BLINDID_BLINDID_H_
#define BLINDID_BLINDID_H_

#include <stddef.h>
#include <stdint.h>

#if defined(BLINDID_BUILDING_LIBRARY)
#define BDID_API __attribute__((visibility("default")))
#else
#define BDID_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/*
 * Every fallible call returns a bdid_status. On failure the calling thread's
 * last-error message and path are set; they stay valid until the next failing
 * call on that thread. Output handles and strings are written only on success.
 * Strings returned through char** are owned by the caller and released with
 * bdid_string_free. A NULL tolerance pointer selects the defaults.
 */

typedef enum bdid_status {
  BDID_OK = 0,
  BDID_INVALID_ARGUMENT = 1,
  BDID_DIMENSION_MISMATCH = 2,
  BDID_PRECONDITION = 3,
  BDID_NOT_FOUND = 4,
  BDID_NUMERICAL = 5,
  BDID_PARSE = 6,
  BDID_IO = 7,
  BDID_INTERNAL = 99
} bdid_status;

typedef struct bdid_tolerance {
  double abs_tol;
  double rel_tol;
} bdid_tolerance;

typedef struct bdid_signal bdid_signal;
typedef struct bdid_matrix bdid_matrix;

typedef struct bdid_trial_config {
  const char* suite; /* attack, quotient, nullspace, kernel, structure, classify, shift */
  uint64_t seed;
  size_t count;
  size_t m_max;
  size_t n_max;
  unsigned threads;
  int timing; /* nonzero adds per-row wall_seconds */
} bdid_trial_config;

BDID_API const char* bdid_version(void);
BDID_API const char* bdid_status_name(bdid_status status);
BDID_API const char* bdid_last_error_message(void);
BDID_API const char* bdid_last_error_path(void);
BDID_API bdid_tolerance bdid_default_tolerance(void);
BDID_API void bdid_string_free(char* s);

/* Signals: finite, length >= 1. */
BDID_API bdid_status bdid_signal_create(const double* entries, size_t len, bdid_signal** out);
BDID_API bdid_status bdid_signal_from_json(const char* json, bdid_signal** out);
BDID_API void bdid_signal_free(bdid_signal* s);
BDID_API size_t bdid_signal_length(const bdid_signal* s);
/* Copies min(len, capacity) entries; fails if capacity < len. */
BDID_API bdid_status bdid_signal_entries(const bdid_signal* s, double* out, size_t capacity);
BDID_API bdid_status bdid_signal_to_json(const bdid_signal* s, char** out);

/* Matrices: finite, row-major. */
BDID_API bdid_status bdid_matrix_create(const double* row_major, size_t rows, size_t cols,
                                        bdid_matrix** out);
BDID_API bdid_status bdid_matrix_from_json(const char* json, bdid_matrix** out);
BDID_API void bdid_matrix_free(bdid_matrix* w);
BDID_API size_t bdid_matrix_rows(const bdid_matrix* w);
BDID_API size_t bdid_matrix_cols(const bdid_matrix* w);
BDID_API bdid_status bdid_matrix_entries(const bdid_matrix* w, double* out, size_t capacity);
BDID_API bdid_status bdid_matrix_to_json(const bdid_matrix* w, char** out);

/* Lifted operator. */
BDID_API bdid_status bdid_convolve(const bdid_signal* x, const bdid_signal* y, bdid_signal** out);
BDID_API bdid_status bdid_lift_apply(const bdid_matrix* w, bdid_signal** out);
BDID_API bdid_status bdid_hankel_basis_element(size_t m, size_t n, size_t j, bdid_matrix** out);
/* JSON array of the m + n - 1 basis matrices. */
BDID_API bdid_status bdid_hankel_basis_json(size_t m, size_t n, char** out);
/* {"top_right": matrix, "bottom_left": matrix} */
BDID_API bdid_status bdid_antidiagonal_shift_json(const bdid_matrix* inner, char** out);
BDID_API bdid_status bdid_outer(const bdid_signal* x, const bdid_signal* y, bdid_matrix** out);
BDID_API bdid_status bdid_rank_estimate(const bdid_matrix* w, const bdid_tolerance* tol,
                                        size_t* out);

/* Null space. Generated elements are {"matrix", "certificate"} documents. */
BDID_API bdid_status bdid_n0_json(const bdid_signal* u, const bdid_signal* v, char** out);
BDID_API bdid_status bdid_n2_lift_json(const bdid_signal* u1, const bdid_signal* u2,
                                       const bdid_signal* v1, const bdid_signal* v2,
                                       const bdid_tolerance* tol, char** out);
BDID_API bdid_status bdid_n2_generate_json(size_t m, size_t n, uint64_t seed, char** out);
BDID_API bdid_status bdid_m2_json(const bdid_signal* u, double lambda, char** out);
/* {"m", "n", "dimension", "basis": [matrix...]} */
BDID_API bdid_status bdid_kernel_basis_json(size_t m, size_t n, char** out);
BDID_API bdid_status bdid_is_in_rank2_nullspace(const bdid_matrix* w, const bdid_tolerance* tol,
                                                int* out);
/* {"matrix", "certificate", "refactorization_residual"} */
BDID_API bdid_status bdid_classify_json(const bdid_matrix* w, const bdid_tolerance* tol,
                                        char** out);
/* Rebuilds the matrix described by a certificate document. */
BDID_API bdid_status bdid_certificate_reconstruct(const char* certificate_json, bdid_matrix** out);

/* Quotient set: JSON array of {"w_star", "gamma", "residual"}. */
BDID_API bdid_status bdid_quotient_decompose_json(const bdid_signal* w, const bdid_tolerance* tol,
                                                  char** out);
BDID_API bdid_status bdid_quotient_reconstruct(const bdid_signal* w_star, double gamma,
                                               bdid_signal** out);

/* Ambiguities. Pairs are {"x", "y", "x_alt", "y_alt", "residual", "collinearity"}. */
BDID_API bdid_status bdid_rotational_family_json(const bdid_signal* x1, const bdid_signal* x2,
                                                 const bdid_signal* y1, const bdid_signal* y2,
                                                 double theta, double phi,
                                                 const bdid_tolerance* tol, char** out);
BDID_API bdid_status bdid_shift_ambiguity_json(const bdid_signal* x, const bdid_signal* y,
                                               char** out);
/* Pair document extended with "theta", "phi", "u", "v". */
BDID_API bdid_status bdid_attack_json(const bdid_signal* x, const bdid_signal* y,
                                      const bdid_tolerance* tol, char** out);
/* {"residual", "collinearity", "certifies_unidentifiability"}; *certifies mirrors the flag. */
BDID_API bdid_status bdid_verify_pair_json(const char* pair_json, const bdid_tolerance* tol,
                                           char** out, int* certifies);

/* Campaigns. *all_passed is nonzero when every row or check succeeded. */
BDID_API bdid_status bdid_trials_json(const bdid_trial_config* config, const bdid_tolerance* tol,
                                      char** out, int* all_passed);
/* fixture_json may be NULL; otherwise an object with optional x1, y1, x2, y2 signals. */
BDID_API bdid_status bdid_reproduce_paper_json(const char* fixture_json, char** out,
                                               int* all_passed);

#ifdef __cplusplus
}
#endif

#endif  // BLINDID_BLINDID_H_
