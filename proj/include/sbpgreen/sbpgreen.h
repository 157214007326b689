/* SPDX-License-Identifier: Apache-2.0 */
#ifndef SBPGREEN_SBPGREEN_H
#define SBPGREEN_SBPGREEN_H

#include <stddef.h>
#include <stdint.h>

#if defined(SBPGREEN_BUILDING_LIBRARY)
#define SBPG_API __attribute__((visibility("default")))
#else
#define SBPG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Values 1..17 mirror the library's internal error codes. */
typedef enum sbpg_status {
  SBPG_OK = 0,
  SBPG_INVALID_ARGUMENT = 1,
  SBPG_GRID_TOO_SMALL = 2,
  SBPG_SINGULAR_MATRIX = 3,
  SBPG_NOT_SYMMETRIC = 4,
  SBPG_SINGULAR_PENALTY = 5,
  SBPG_SINGULAR_QBAR = 6,
  SBPG_SINGULAR_ABAR = 7,
  SBPG_SINGULAR_SIGMA = 8,
  SBPG_ODD_N = 9,
  SBPG_NON_INTEGER_SEQUENCE = 10,
  SBPG_NOT_WIDE_STENCIL = 11,
  SBPG_NOT_CENTROSYMMETRIC = 12,
  SBPG_DEGENERATE_BC = 13,
  SBPG_UNSTABLE_STEP = 14,
  SBPG_SINGULAR_SYSTEM = 15,
  SBPG_PARSE_ERROR = 16,
  SBPG_IO_ERROR = 17,
  SBPG_INTERNAL = 99
} sbpg_status;

typedef struct sbpg_operator sbpg_operator;
typedef struct sbpg_system sbpg_system;
typedef struct sbpg_matrix sbpg_matrix;
typedef struct sbpg_run sbpg_run;

/* Penalties and Robin data. First-derivative systems read sigmaL only. */
typedef struct sbpg_sat {
  double sigmaL, sigmaR;
  double tauL, tauR;
  double alphaL, alphaR;
  double betaL, betaR;
} sbpg_sat;

/* Message of the last failed call on this thread ("" if none). */
SBPG_API const char* sbpg_last_error(void);
SBPG_API const char* sbpg_status_name(sbpg_status status);
/* Releases strings returned through char** out-parameters. */
SBPG_API void sbpg_string_free(char* s);

/* Operators. Variants: d1_21, d1_42 (first derivative); n20, n21, n42, w20 (second). */
SBPG_API sbpg_status sbpg_operator_create(const char* variant, int n, double ell, sbpg_operator** out);
SBPG_API sbpg_status sbpg_operator_load_csv(const char* path, double ell, sbpg_operator** out);
SBPG_API void sbpg_operator_free(sbpg_operator* op);
SBPG_API int sbpg_operator_is_second(const sbpg_operator* op);
SBPG_API int sbpg_operator_intervals(const sbpg_operator* op);
SBPG_API double sbpg_operator_length(const sbpg_operator* op);
SBPG_API const char* sbpg_operator_variant(const sbpg_operator* op);
/* Writes the n + 1 node coordinates. */
SBPG_API sbpg_status sbpg_operator_nodes(const sbpg_operator* op, double* out, size_t len);
/* name: H, Q, D1 (first); H, A, D2, dL, dR (second). Vectors come back as one column. */
SBPG_API sbpg_status sbpg_operator_matrix(const sbpg_operator* op, const char* name, sbpg_matrix** out);
/* SBP residual report; *passed is 1 when every residual is at most 1e-10. */
SBPG_API sbpg_status sbpg_operator_verify_json(const sbpg_operator* op, char** json, int* passed);
/* Identity suite used by the second-derivative inverse. */
SBPG_API sbpg_status sbpg_operator_preliminaries_json(const sbpg_operator* op, char** json, double* max_residual);
SBPG_API sbpg_status sbpg_operator_xi_json(const sbpg_operator* op, char** json);
SBPG_API sbpg_status sbpg_operator_theorem3_json(const sbpg_operator* op, char** json, int* passed);

/* Dual-consistent penalties on both sides. Advection: sigmaL = -1. */
SBPG_API sbpg_status sbpg_default_sat(const sbpg_operator* op, double alpha, double beta, sbpg_sat* out);
/* Stable, dual-consistent and singular penalties for the given Robin data. */
SBPG_API sbpg_status sbpg_witness_sat(const sbpg_operator* op, double alpha, double beta, sbpg_sat* out);

SBPG_API sbpg_status sbpg_system_create(const sbpg_operator* op, const sbpg_sat* sat, sbpg_system** out);
SBPG_API void sbpg_system_free(sbpg_system* sys);
SBPG_API sbpg_status sbpg_system_matrix(const sbpg_system* sys, sbpg_matrix** out);
/* closed_form = 0: LU inverse. closed_form = 1: explicit inverse, evaluated
   exactly when exact = 1. Singular systems return SBPG_SINGULAR_SYSTEM. */
SBPG_API sbpg_status sbpg_system_invert(const sbpg_system* sys, int closed_form, int exact, sbpg_matrix** out);
/* ||K Kinv - I||_inf. */
SBPG_API sbpg_status sbpg_system_inverse_residual(const sbpg_system* sys, const sbpg_matrix* inv, double* out);
SBPG_API sbpg_status sbpg_system_singularity_json(const sbpg_system* sys, char** json, int* singular);
SBPG_API sbpg_status sbpg_system_stability_json(const sbpg_system* sys, char** json, int* stable);

/* Steady solve of K v = H f~. v has n + 1 entries. gR is ignored for advection. */
SBPG_API sbpg_status sbpg_solve_steady(const sbpg_system* sys, const double* f, size_t len, double gL, double gR,
                                       int closed_form, int exact, double* v, double* residual);

/* RK4 with time-independent data. f may be NULL; f == NULL with gL = gR = 0 is the
   homogeneous case, where one-step energy growth above 1e-6 of the initial energy
   returns SBPG_UNSTABLE_STEP. dt = 0 picks the capped default. */
SBPG_API sbpg_status sbpg_integrate(const sbpg_system* sys, const double* v0, size_t len, const double* f, double gL,
                                    double gR, double t_end, double dt, double cfl, int output_every, sbpg_run** out);
SBPG_API void sbpg_run_free(sbpg_run* run);
SBPG_API double sbpg_run_dt(const sbpg_run* run);
SBPG_API size_t sbpg_run_energy_count(const sbpg_run* run);
SBPG_API const double* sbpg_run_energy(const sbpg_run* run);
/* Columns t, v_0..v_n, energy. */
SBPG_API sbpg_status sbpg_run_csv(const sbpg_run* run, char** csv);

/* Steady manufactured-solution study. equation: "heat" or "advection";
   solution: "sin" (sin(pi x / ell)) or "quadratic" (x (ell - x) / 2).
   Heat uses Dirichlet data with the default penalties, advection sigmaL = -1. */
SBPG_API sbpg_status sbpg_convergence_csv(const char* equation, const char* variant, const char* solution,
                                          const int* sizes, size_t count, double ell, char** csv);
/* Rows x, y, Kinv_ij, continuous Green's function. */
SBPG_API sbpg_status sbpg_green_compare_csv(const sbpg_system* sys, const sbpg_matrix* inv, char** csv);

SBPG_API sbpg_status sbpg_table1(int n, char** text, char** csv, char** json, int* all_match);
SBPG_API sbpg_status sbpg_qrtab(int n_from, int n_to, int exact, char** text, char** csv, char** json,
                                int* all_match);
SBPG_API sbpg_status sbpg_energy_suite(uint64_t seed, int runs, char** json, int* violations);

SBPG_API void sbpg_matrix_free(sbpg_matrix* m);
SBPG_API size_t sbpg_matrix_rows(const sbpg_matrix* m);
SBPG_API size_t sbpg_matrix_cols(const sbpg_matrix* m);
/* Row-major entries, valid until the matrix is freed. */
SBPG_API const double* sbpg_matrix_data(const sbpg_matrix* m);
SBPG_API sbpg_status sbpg_matrix_max_diff(const sbpg_matrix* a, const sbpg_matrix* b, double* out);
SBPG_API sbpg_status sbpg_matrix_csv(const sbpg_matrix* m, char** csv);

#ifdef __cplusplus
}
#endif

#endif /* SBPGREEN_SBPGREEN_H */
