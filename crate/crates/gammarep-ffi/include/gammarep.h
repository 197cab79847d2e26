#ifndef GAMMAREP_H
#define GAMMAREP_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stdint.h>

// Status codes returned by every fallible entry point.
typedef enum GammarepStatus {
  GAMMAREP_STATUS_OK = 0,
  // Argument outside the domain of the function.
  GAMMAREP_STATUS_DOMAIN = 1,
  // Argument is a pole.
  GAMMAREP_STATUS_POLE = 2,
  // Internal table capacity exceeded.
  GAMMAREP_STATUS_CAPACITY = 3,
  // Non-finite integrand encountered during quadrature.
  GAMMAREP_STATUS_BAD_INTEGRAND = 4,
  // Control parameters rejected.
  GAMMAREP_STATUS_INVALID_CTRL = 5,
  // A required pointer was null.
  GAMMAREP_STATUS_NULL_POINTER = 6,
  // A name string was not valid UTF-8 or not recognised.
  GAMMAREP_STATUS_INVALID_NAME = 7,
  // The library panicked; this is a bug.
  GAMMAREP_STATUS_INTERNAL = 8,
} GammarepStatus;

// Opaque evaluation context holding the control parameters.
typedef struct GammarepCtx GammarepCtx;

// Value with its error estimate and work counters.
typedef struct GammarepResult {
  double value;
  double err_est;
  uint64_t terms_used;
  uint64_t nodes_used;
  bool converged;
} GammarepResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *gammarep_version(void);

// Message describing the most recent failure on this thread, or null.
const char *gammarep_last_error(void);

// Creates a context with default controls. Never returns null.
struct GammarepCtx *gammarep_ctx_new(void);

// Releases a context. Null is ignored.
//
// # Safety
// `ctx` must be null or a pointer obtained from [`gammarep_ctx_new`] that has
// not been freed.
void gammarep_ctx_free(struct GammarepCtx *ctx);

// Replaces the control parameters; the context is unchanged on failure.
//
// # Safety
// `ctx` must be a live context.
enum GammarepStatus gammarep_ctx_set(struct GammarepCtx *ctx,
                                     uint64_t max_terms,
                                     double target_tol,
                                     uint32_t quad_levels,
                                     uint32_t tail_order);

// Reads back the control parameters. Any out-pointer may be null.
//
// # Safety
// `ctx` must be a live context; non-null out-pointers must be writable.
enum GammarepStatus gammarep_ctx_get(const struct GammarepCtx *ctx,
                                     uint64_t *max_terms,
                                     double *target_tol,
                                     uint32_t *quad_levels,
                                     uint32_t *tail_order);

// Reference digamma value ψ(a), a > 0.
//
// # Safety
// `out` must be writable.
enum GammarepStatus gammarep_psi_ref(double a, double *out);

// ψ(a) by the named representation under the context's controls.
//
// Passing a null `ctx` uses the representation's own default controls.
//
// # Safety
// `ctx` must be null or live, `rep` a NUL-terminated string, `out` writable.
enum GammarepStatus gammarep_psi(const struct GammarepCtx *ctx,
                                 double a,
                                 const char *rep,
                                 struct GammarepResult *out);

// ψ(p/q) in closed form, 0 < p < q, gcd(p, q) = 1.
//
// # Safety
// `out` must be writable.
enum GammarepStatus gammarep_psi_rational(uint64_t p, uint64_t q, double *out);

// Reference polygamma value ψ^{(j)}(a).
//
// # Safety
// `out` must be writable.
enum GammarepStatus gammarep_polygamma_ref(uint32_t j, double a, double *out);

// ψ^{(j)}(a) by the named representation.
//
// # Safety
// As for [`gammarep_psi`].
enum GammarepStatus gammarep_polygamma(const struct GammarepCtx *ctx,
                                       uint32_t j,
                                       double a,
                                       const char *rep,
                                       struct GammarepResult *out);

// Reference value of ln Γ(a), a > 0.
//
// # Safety
// `out` must be writable.
enum GammarepStatus gammarep_lngamma_ref(double a, double *out);

// ln Γ(a) by the named representation.
//
// # Safety
// As for [`gammarep_psi`].
enum GammarepStatus gammarep_lngamma(const struct GammarepCtx *ctx,
                                     double a,
                                     const char *rep,
                                     struct GammarepResult *out);

// Cosine and sine integrals Ci(x), Si(x) for x > 0. Either out-pointer may be null.
//
// # Safety
// Non-null out-pointers must be writable.
enum GammarepStatus gammarep_ci_si(double x, double *ci, double *si);

// Hurwitz zeta ζ(s, q).
//
// # Safety
// `out` must be writable.
enum GammarepStatus gammarep_hurwitz_zeta(double s, double q, double *out);

// Cosine-integral sum `Σ_n w_n Ci(βn)` for the named weight family.
//
// `case` is a family name such as `"p2"` or `"real-a"`; `k`, `a` and `z` supply
// the family parameter where one is needed and are ignored otherwise. With
// `closed` true the closed form is evaluated, otherwise the direct series.
//
// # Safety
// `ctx` must be null or live, `case` a NUL-terminated string, `out` writable.
enum GammarepStatus gammarep_ci_sum(const struct GammarepCtx *ctx,
                                    double beta,
                                    const char *case_,
                                    uint32_t k,
                                    double a,
                                    double z,
                                    bool closed,
                                    struct GammarepResult *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GAMMAREP_H */
