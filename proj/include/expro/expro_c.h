#ifndef EXPRO_C_H
#define EXPRO_C_H

/*
 * C interface to the extremal projector library.
 *
 * Every call that can fail returns an expro_status. Results are opaque and
 * carry a UTF-8 JSON document plus a pass flag; free them with
 * expro_result_free. The last error message of a context is kept until the
 * next call on that context.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define EXPRO_API __declspec(dllexport)
#else
#define EXPRO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum expro_status {
  EXPRO_OK = 0,
  EXPRO_ERR_INVALID_RANK = 1,
  EXPRO_ERR_NOT_REDUCED = 2,
  EXPRO_ERR_INVALID_ORDER = 3,
  EXPRO_ERR_NOT_CENTRAL = 4,
  EXPRO_ERR_ZERO_DIVISOR = 5,
  EXPRO_ERR_POLE_AT_POINT = 6,
  EXPRO_ERR_NOT_WEIGHT_ZERO = 7,
  EXPRO_ERR_TRUNCATION_OVERFLOW = 8,
  EXPRO_ERR_DECOMPOSITION_FAILURE = 9,
  EXPRO_ERR_DEGENERATE_CENTER = 10,
  EXPRO_ERR_DEGENERATE_FORM = 11,
  EXPRO_ERR_INVALID_T = 12,
  EXPRO_ERR_PARSE = 13,
  EXPRO_ERR_INVALID_ARGUMENT = 14,
  EXPRO_ERR_INTERNAL = 15,
  EXPRO_ERR_COST_GUARD = 16
} expro_status;

typedef struct expro_context expro_context;
typedef struct expro_result expro_result;

EXPRO_API const char* expro_version(void);
EXPRO_API const char* expro_status_name(expro_status status);

EXPRO_API expro_status expro_context_new(expro_context** out);
EXPRO_API void expro_context_free(expro_context* ctx);
EXPRO_API const char* expro_context_last_error(const expro_context* ctx);

/* Settings left unset fall back to the defaults of each command. */
EXPRO_API expro_status expro_context_set_depth(expro_context* ctx, int depth);
EXPRO_API expro_status expro_context_set_mode(expro_context* ctx, const char* mode); /* "symbolic" | "generic" */
EXPRO_API expro_status expro_context_set_seed(expro_context* ctx, uint64_t seed);
EXPRO_API expro_status expro_context_set_trials(expro_context* ctx, int trials);
/* Allow symbolic mode for n > 4. */
EXPRO_API expro_status expro_context_set_force(expro_context* ctx, int force);

EXPRO_API size_t expro_registry_count(void);
EXPRO_API const char* expro_registry_id(size_t index);

EXPRO_API expro_status expro_roots(expro_context* ctx, int n, expro_result** out);
EXPRO_API expro_status expro_normal_orders(expro_context* ctx, int n, expro_result** out);
/* P(m, l); m NULL or "g" gives P(g, l). */
EXPRO_API expro_status expro_projector(expro_context* ctx, int n, const char* m, const char* l, expro_result** out);
EXPRO_API expro_status expro_verify(expro_context* ctx, const char* registry_id, expro_result** out);
/* problem: key=value lines (n, l, m, ml, left, right, target, depth, mode, seed, trials) */
EXPRO_API expro_status expro_solve(expro_context* ctx, const char* problem, expro_result** out);
/* Lattice D(m) for l NULL or "h", else D(m, l); a problem, when given, is solved and its report attached. */
EXPRO_API expro_status expro_denominators(expro_context* ctx, int n, const char* m, const char* l, int bound,
                                          const char* problem, expro_result** out);
EXPRO_API expro_status expro_shapovalov(expro_context* ctx, int n, expro_result** out);

EXPRO_API const char* expro_result_json(const expro_result* result);
/* 1 when the computed identity or report holds as expected, else 0. */
EXPRO_API int expro_result_passed(const expro_result* result);
EXPRO_API void expro_result_free(expro_result* result);

#ifdef __cplusplus
}
#endif

#endif /* EXPRO_C_H */
