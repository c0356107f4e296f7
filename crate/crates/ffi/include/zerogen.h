#ifndef ZEROGEN_H
#define ZEROGEN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ZgStatus {
  ZG_STATUS_OK = 0,
  ZG_STATUS_NULL_POINTER = 1,
  ZG_STATUS_INVALID_UTF8 = 2,
  ZG_STATUS_PARSE = 3,
  ZG_STATUS_SCHEMA = 4,
  ZG_STATUS_IO = 5,
  ZG_STATUS_DOMAIN = 6,
  ZG_STATUS_BUDGET = 7,
  ZG_STATUS_NUMERIC = 8,
  ZG_STATUS_PANIC = 9,
} ZgStatus;

typedef enum ZgVerdict {
  ZG_VERDICT_GENERATING = 0,
  ZG_VERDICT_NOT_GENERATING = 1,
  ZG_VERDICT_BUDGET_EXCEEDED = 2,
} ZgVerdict;

/**
 * Opaque certificate handle.
 */
typedef struct ZgCertificate ZgCertificate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Decide the vector `entries[0..n]`. Zero budgets select the defaults.
 *
 * # Safety
 * `entries` must point to `n` readable values and `out_verdict` must be writable.
 */
enum ZgStatus zg_decide(const uint64_t *entries,
                        size_t n,
                        uint64_t max_tuples,
                        uint64_t max_seconds,
                        enum ZgVerdict *out_verdict);

/**
 * Like [`zg_decide`], also returning a checked certificate (null on budget exhaustion).
 *
 * # Safety
 * As for [`zg_decide`]; `out_cert` must be writable.
 */
enum ZgStatus zg_decide_certified(const uint64_t *entries,
                                  size_t n,
                                  uint64_t max_tuples,
                                  uint64_t max_seconds,
                                  enum ZgVerdict *out_verdict,
                                  struct ZgCertificate **out_cert);

/**
 * Load a certificate file.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` writable.
 */
enum ZgStatus zg_cert_load(const char *path, struct ZgCertificate **out);

/**
 * Parse a certificate from JSON text.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum ZgStatus zg_cert_from_json(const char *json, struct ZgCertificate **out);

/**
 * Check a certificate. `out_passed` is set to 1 on pass and 0 on failure;
 * `out_proves_generating` (optional) tells which outcome a pass establishes.
 *
 * # Safety
 * `cert` must come from this library; the outputs must be writable or null where optional.
 */
enum ZgStatus zg_cert_verify(const struct ZgCertificate *cert,
                             int32_t *out_passed,
                             int32_t *out_proves_generating);

/**
 * Serialize a certificate; free the result with [`zg_string_free`].
 *
 * # Safety
 * `cert` must come from this library and `out` be writable.
 */
enum ZgStatus zg_cert_to_json(const struct ZgCertificate *cert, char **out);

/**
 * Dimension of the certified vector.
 *
 * # Safety
 * `cert` must come from this library or be null (returns 0).
 */
size_t zg_cert_dim(const struct ZgCertificate *cert);

/**
 * # Safety
 * `cert` must come from this library (or be null) and not be used afterwards.
 */
void zg_cert_free(struct ZgCertificate *cert);

/**
 * # Safety
 * `s` must come from this library (or be null) and not be used afterwards.
 */
void zg_string_free(char *s);

/**
 * `φ(n)` as a decimal string; free with [`zg_string_free`].
 *
 * # Safety
 * `out` must be writable.
 */
enum ZgStatus zg_varphi(size_t n, char **out);

/**
 * `ϕ(n)` and the maximizing `x`.
 *
 * # Safety
 * `out_value` must be writable; `out_x` may be null.
 */
enum ZgStatus zg_phi_real(size_t n, double *out_value, double *out_x);

/**
 * Principal branch of Lambert W for `x ≥ 0`.
 *
 * # Safety
 * `out` must be writable.
 */
enum ZgStatus zg_lambert_w(double x, double *out);

/**
 * Message for the last failure on this thread (empty after a success, or the
 * failure report after a certificate check that did not pass).
 * The pointer stays valid until the next call into the library on this thread.
 */
const char *zg_last_error_message(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* ZEROGEN_H */
