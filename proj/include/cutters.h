/* SPDX-License-Identifier: Apache-2.0 */

/* C interface to the cutters solver library.
 *
 * All objects are opaque handles created and destroyed here. Functions that
 * can fail return a cutters_status; on failure a thread-local message is
 * available from cutters_last_error() until the next call on that thread.
 */

#ifndef CUTTERS_H
#define CUTTERS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(CUTTERS_BUILD)
#define CUTTERS_API __declspec(dllexport)
#else
#define CUTTERS_API __declspec(dllimport)
#endif
#else
#define CUTTERS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cutters_status {
  CUTTERS_OK = 0,
  CUTTERS_ERR_USAGE = 1,      /* argument or parameter out of contract */
  CUTTERS_ERR_PARSE = 2,      /* problem text malformed (message has the line) */
  CUTTERS_ERR_VALIDATION = 3, /* well-formed data violating a semantic rule */
  CUTTERS_ERR_IO = 4,         /* file could not be read or written */
  CUTTERS_ERR_INTERNAL = 5
} cutters_status;

typedef enum cutters_policy {
  CUTTERS_POLICY_UNIT = 0,
  CUTTERS_POLICY_SIGMA_MAX = 1,
  CUTTERS_POLICY_SIGMA_SPECIALIZED = 2,
  CUTTERS_POLICY_CLAMPED = 3,
  CUTTERS_POLICY_FLOORED = 4
} cutters_policy;

typedef enum cutters_solve_status {
  CUTTERS_SOLVE_CONVERGED = 0,
  CUTTERS_SOLVE_MAX_ITERS = 1,
  CUTTERS_SOLVE_STALLED = 2
} cutters_solve_status;

typedef struct cutters_problem cutters_problem;
typedef struct cutters_result cutters_result;

typedef struct cutters_options {
  cutters_policy policy; /* default SIGMA_MAX */
  double clamp_alpha;    /* CLAMPED only, in (0, 1/2]; default 0.5 */
  double lambda;         /* relaxation, in (0,2); default 1.0 */
  double epsilon;        /* lambda band margin, in (0,1); default 1e-2 */
  double tol_residual;   /* stop when ||Ux-x|| <= tol; default 1e-8 */
  long max_iters;        /* default 10000 */
  double fix_tol;        /* fixed-point detection scale; default 1e-13 */
  int use_witness_ref;   /* nonzero: record distance to the problem witness */
} cutters_options;

CUTTERS_API void cutters_options_init(cutters_options* opts);

/* --- problems --------------------------------------------------------- */

CUTTERS_API cutters_status cutters_problem_parse(const char* text, cutters_problem** out);
CUTTERS_API cutters_status cutters_problem_load(const char* path, cutters_problem** out);
CUTTERS_API cutters_status cutters_problem_generate(uint64_t seed, int dim, int m,
                                                    const char* kind, double conditioning,
                                                    cutters_problem** out);
CUTTERS_API cutters_status cutters_problem_save(const cutters_problem* p, const char* path);

/* Serialized problem text; release with cutters_string_free. */
CUTTERS_API cutters_status cutters_problem_serialize(const cutters_problem* p, char** out);

CUTTERS_API int cutters_problem_dim(const cutters_problem* p);
CUTTERS_API int cutters_problem_count(const cutters_problem* p);
/* "eq" | "ineq" | "convex" | "mixed" (static string) */
CUTTERS_API const char* cutters_problem_kind(const cutters_problem* p);
/* Nonzero when the specialized step size applies to this problem. */
CUTTERS_API int cutters_problem_homogeneous(const cutters_problem* p);
CUTTERS_API int cutters_problem_has_witness(const cutters_problem* p);
/* Copies the witness into out[0..dim). Fails when no witness is present. */
CUTTERS_API cutters_status cutters_problem_witness(const cutters_problem* p, double* out);
CUTTERS_API void cutters_problem_free(cutters_problem* p);

/* --- solving ---------------------------------------------------------- */

/* x0 may be NULL for the zero vector. opts may be NULL for defaults. */
CUTTERS_API cutters_status cutters_solve(const cutters_problem* p, const double* x0,
                                         const cutters_options* opts, cutters_result** out);

CUTTERS_API cutters_solve_status cutters_result_status(const cutters_result* r);
CUTTERS_API long cutters_result_iterations(const cutters_result* r);
/* Final iterate; the pointer stays valid until the result is freed. */
CUTTERS_API const double* cutters_result_point(const cutters_result* r, int* dim);
CUTTERS_API long cutters_result_records(const cutters_result* r);

typedef struct cutters_record {
  long iter;
  double residual;
  double sigma;
  double lambda;
  double dist_to_ref; /* NaN when no reference point was supplied */
  double stage_sq_sum;
} cutters_record;

CUTTERS_API cutters_status cutters_result_record(const cutters_result* r, long index,
                                                 cutters_record* out);
CUTTERS_API void cutters_result_free(cutters_result* r);

/* --- misc ------------------------------------------------------------- */

CUTTERS_API void cutters_string_free(char* s);

/* Message for the most recent failure on this thread; empty string when the
 * last call succeeded. */
CUTTERS_API const char* cutters_last_error(void);

#ifdef __cplusplus
}
#endif

#endif /* CUTTERS_H */
