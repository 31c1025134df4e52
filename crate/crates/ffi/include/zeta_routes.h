#ifndef ZETA_ROUTES_H
#define ZETA_ROUTES_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Number of routes; the size of [`ZrComparison::results`].
 */
#define ZR_ROUTE_COUNT 7

/*
 Result code of every call.
 */
typedef enum ZrStatus {
  ZR_STATUS_OK = 0,
  /*
   Argument outside the operation's domain.
   */
  ZR_STATUS_DOMAIN = 1,
  /*
   Argument too close to the pole at s = 1.
   */
  ZR_STATUS_POLE = 2,
  /*
   Index beyond the Bernoulli table.
   */
  ZR_STATUS_CAPACITY = 3,
  /*
   Quadrature met a non-finite or non-decaying integrand, or a value overflowed.
   */
  ZR_STATUS_NUMERICAL = 4,
  /*
   An internal cross-check disagreed.
   */
  ZR_STATUS_CONSISTENCY = 5,
  /*
   Bad configuration or unknown enumerator.
   */
  ZR_STATUS_CONFIG = 6,
  ZR_STATUS_NULL_POINTER = 7,
  /*
   A Rust panic was caught at the boundary.
   */
  ZR_STATUS_PANIC = 8,
} ZrStatus;

/*
 Route selector. `ZR_ROUTE_DEFAULT` picks Euler's closed form at even
 integers and the eta series elsewhere.
 */
typedef enum ZrRoute {
  ZR_ROUTE_DEFAULT = -1,
  ZR_ROUTE_EULER_EVEN = 0,
  ZR_ROUTE_INTEGRAL_GENERAL = 1,
  ZR_ROUTE_INTEGRAL_POSINT = 2,
  ZR_ROUTE_INTEGRAL_HALFINT = 3,
  ZR_ROUTE_COTANGENT_ODD = 4,
  ZR_ROUTE_ETA_SERIES = 5,
  ZR_ROUTE_DIRICHLET_SERIES = 6,
} ZrRoute;

typedef enum ZrDistribution {
  ZR_DISTRIBUTION_LOGISTIC = 0,
  ZR_DISTRIBUTION_HALF_LOGISTIC = 1,
  ZR_DISTRIBUTION_ELLIPTIC_LOGISTIC = 2,
} ZrDistribution;

/*
 Opaque evaluator holding route tolerances and budgets.
 */
typedef struct ZrEvaluator ZrEvaluator;

typedef struct ZrValue {
  double value;
  double abs_error;
  size_t evaluations;
  bool converged;
} ZrValue;

typedef struct ZrRouteValue {
  /*
   A `ZrRoute` value.
   */
  int32_t route;
  struct ZrValue result;
} ZrRouteValue;

typedef struct ZrComparison {
  double argument;
  double max_pairwise_gap;
  double tolerance;
  double allowance;
  bool pass;
  /*
   Entries of `results` in use, in route order.
   */
  size_t n_results;
  struct ZrRouteValue results[ZR_ROUTE_COUNT];
} ZrComparison;

typedef struct ZrMcEstimate {
  double mean;
  double stderr;
  size_t n_samples;
  uint64_t seed;
  /*
   Closed-form value of the moment.
   */
  double target;
  double z_score;
} ZrMcEstimate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Creates an evaluator. `tol` is the absolute tolerance for every route;
 `max_evals` caps integrand evaluations per quadrature (0 keeps the
 default). Returns NULL on invalid input.
 */
struct ZrEvaluator *zr_evaluator_new(double tol, size_t max_evals);

/*
 Releases an evaluator. NULL is ignored.

 # Safety
 `evaluator` must come from [`zr_evaluator_new`] and not be used afterwards.
 */
void zr_evaluator_free(struct ZrEvaluator *evaluator);

/*
 Evaluates ζ(s) by `route` (a `ZrRoute` value).

 # Safety
 `evaluator` must be a live handle and `out` must point to writable memory.
 */
enum ZrStatus zr_eval(const struct ZrEvaluator *evaluator,
                      double s,
                      int32_t route,
                      struct ZrValue *out);

/*
 Runs every applicable route at `s` and checks agreement within `tol`
 plus the two largest reported errors. A failed check is reported through
 `out->pass`, not the status. `fault_offset` other than 0 is added to the
 first route's value, for testing the check itself.

 # Safety
 `evaluator` must be a live handle and `out` must point to writable memory.
 */
enum ZrStatus zr_compare(const struct ZrEvaluator *evaluator,
                         double s,
                         double tol,
                         double fault_offset,
                         struct ZrComparison *out);

/*
 Writes `B_n` as `"num/den"` (or an integer) to `*out`. Release the
 string with [`zr_string_free`].

 # Safety
 `out` must point to writable memory.
 */
enum ZrStatus zr_bernoulli(size_t n, char **out);

/*
 Releases a string returned by this library. NULL is ignored.

 # Safety
 `s` must come from this library and not be used afterwards.
 */
void zr_string_free(char *s);

/*
 Seeded Monte Carlo estimate of `E X^k` for `distribution` (a
 `ZrDistribution` value) from `n >= 1000` samples.

 # Safety
 `out` must point to writable memory.
 */
enum ZrStatus zr_mc_moment(int32_t distribution,
                           uint32_t k,
                           size_t n,
                           uint64_t seed,
                           struct ZrMcEstimate *out);

/*
 Message for the last failed call on this thread, or NULL. The pointer
 stays valid until the next call into the library on the same thread.
 */
const char *zr_last_error_message(void);

/*
 Library version, a static NUL-terminated string.
 */
const char *zr_version(void);

/*
 Short name of a status code, a static string.
 */
const char *zr_status_name(enum ZrStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ZETA_ROUTES_H */
