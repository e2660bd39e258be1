#ifndef PADIC_GKZ_H
#define PADIC_GKZ_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GkzStatus {
  GKZ_STATUS_OK = 0,
  GKZ_STATUS_NULL_POINTER = 1,
  GKZ_STATUS_INVALID_UTF8 = 2,
  GKZ_STATUS_INVALID_ARGUMENT = 3,
  GKZ_STATUS_NOT_PRIME = 4,
  GKZ_STATUS_NOT_P_INTEGRAL = 5,
  GKZ_STATUS_EMPTY_SET = 6,
  GKZ_STATUS_DEGENERATE_TERM = 7,
  GKZ_STATUS_OUTSIDE_CONE = 8,
  GKZ_STATUS_NOT_FOUND = 9,
  GKZ_STATUS_CAP_EXCEEDED = 10,
  GKZ_STATUS_DEGENERATE_EMBEDDING = 11,
  GKZ_STATUS_PARSE = 12,
  GKZ_STATUS_OVERFLOW = 13,
  GKZ_STATUS_DIVISION_BY_ZERO = 14,
  GKZ_STATUS_PANIC = 15,
} GkzStatus;

/**
 * Opaque handle to a point configuration.
 */
typedef struct GkzConfig GkzConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a configuration from `num_columns` columns of length `dim`,
 * stored column after column in `columns`.
 *
 * # Safety
 * `columns` must point to `dim * num_columns` integers and `out` must be writable.
 */
enum GkzStatus gkz_config_new(const int64_t *columns,
                              uintptr_t dim,
                              uintptr_t num_columns,
                              struct GkzConfig **out);

/**
 * # Safety
 * `cfg` must come from [`gkz_config_new`] and not be used afterwards.
 */
void gkz_config_free(struct GkzConfig *cfg);

/**
 * Dimension `n` of the ambient lattice, or 0 for a null handle.
 *
 * # Safety
 * `cfg` must be null or a live handle.
 */
uintptr_t gkz_config_dim(const struct GkzConfig *cfg);

/**
 * Number of columns `N`, or 0 for a null handle.
 *
 * # Safety
 * `cfg` must be null or a live handle.
 */
uintptr_t gkz_config_num_columns(const struct GkzConfig *cfg);

/**
 * The relation lattice basis as a JSON array of integer arrays.
 *
 * # Safety
 * `cfg` must be a live handle and `out` writable.
 */
enum GkzStatus gkz_relation_lattice_json(const struct GkzConfig *cfg, char **out);

/**
 * The weight `w(r)` as a rational string.
 *
 * # Safety
 * `r` must be a NUL-terminated string and `out` writable.
 */
enum GkzStatus gkz_weight(const char *r, uint64_t p, char **out);

/**
 * `ord_p(x)` as a rational string, or `"inf"` for zero.
 *
 * # Safety
 * `x` must be a NUL-terminated string and `out` writable.
 */
enum GkzStatus gkz_ord_p(const char *x, uint64_t p, char **out);

/**
 * The integrality verdict for `Φ_v` as JSON. `beta` may be null, in which
 * case `Σ v_i a_i` is used.
 *
 * # Safety
 * `cfg` must be a live handle, `v` a NUL-terminated string, `beta` null or
 * NUL-terminated, and `out` writable.
 */
enum GkzStatus gkz_verdict_json(const struct GkzConfig *cfg,
                                const char *v,
                                const char *beta,
                                uint64_t p,
                                uint32_t b_max,
                                char **out);

/**
 * The optimal `(γ, b, v)` over `β + ℤ^n` as JSON.
 *
 * # Safety
 * `cfg` must be a live handle, `beta` NUL-terminated, and `out` writable.
 */
enum GkzStatus gkz_search_json(const struct GkzConfig *cfg,
                               const char *beta,
                               uint64_t p,
                               char **out);

/**
 * Domination, the shifted and digit-wise criteria, and the least coefficient
 * valuation for `j ≤ j_max`, as JSON. `theta` may be an empty string.
 *
 * # Safety
 * `theta` and `sigma` must be NUL-terminated strings and `out` writable.
 */
enum GkzStatus gkz_classical_json(const char *theta,
                                  const char *sigma,
                                  uint64_t p,
                                  uint32_t j_max,
                                  char **out);

/**
 * Runs a CLI command (`"verdict"`, `"search"`, ...) on a TOML job and writes
 * the JSON report. `exit` receives the command's exit status.
 *
 * # Safety
 * `command` and `job_toml` must be NUL-terminated, `out` and `exit` writable.
 */
enum GkzStatus gkz_run_job_json(const char *command,
                                const char *job_toml,
                                char **out,
                                uint8_t *exit);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void gkz_string_free(char *s);

/**
 * The message of the last failure on this thread, or null. The pointer is
 * valid until the next call into this library on the same thread.
 */
const char *gkz_last_error(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* PADIC_GKZ_H */
