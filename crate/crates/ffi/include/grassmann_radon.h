/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef GRASSMANN_RADON_H
#define GRASSMANN_RADON_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define GR_FIELD_REAL 1

#define GR_FIELD_COMPLEX 2

#define GR_FIELD_QUATERNION 4

#define GR_FORMAT_JSON 0

#define GR_FORMAT_CSV 1

typedef enum GrStatus {
  GR_STATUS_OK = 0,
  GR_STATUS_NULL_POINTER = 1,
  GR_STATUS_INVALID_ARGUMENT = 2,
  GR_STATUS_CONFIG = 3,
  GR_STATUS_INFEASIBLE = 4,
  GR_STATUS_DOMAIN = 5,
  GR_STATUS_NUMERICAL = 6,
  GR_STATUS_IO = 7,
  GR_STATUS_PANIC = 8,
} GrStatus;

/**
 * Opaque list of checks to run.
 */
typedef struct GrManifest GrManifest;

/**
 * Opaque result document of a check or suite run.
 */
typedef struct GrReport GrReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *gr_version(void);

/**
 * Message of the last failed call on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *gr_last_error_message(void);

/**
 * Cone Gamma function `Gamma_Omega(lambda)` of rank `k`.
 */
enum GrStatus gr_gamma_cone(uint32_t field_d, size_t k, double lambda, double *out);

/**
 * Cone Beta function `B_Omega(lambda, mu)` of rank `k`.
 */
enum GrStatus gr_beta_cone(uint32_t field_d, size_t k, double lambda, double mu, double *out);

/**
 * Coefficient `c` in `I^lambda Delta^(mu - N/k) = c Delta^(lambda + mu - N/k)`.
 */
enum GrStatus gr_frac_integral_power(uint32_t field_d,
                                     size_t k,
                                     double lambda,
                                     double mu,
                                     double *out);

/**
 * Monte Carlo Radon transform of `tr(A P)` at a seeded `k'`-frame, with
 * its standard error and the closed form `(k/k') tr(A P_eta)`.
 */
enum GrStatus gr_radon_trace_projection(uint32_t field_d,
                                        size_t n,
                                        size_t k,
                                        size_t kp,
                                        uint64_t samples,
                                        uint64_t seed,
                                        double *estimate,
                                        double *std_error,
                                        double *closed_form);

/**
 * Rank-one inversion round trip for `tr(A P)` (`constant_function` = 0)
 * or `f = 1` (non-zero); writes the relative L2 error over `points`.
 */
enum GrStatus gr_round_trip_k1(uint32_t field_d,
                               size_t n,
                               size_t kp,
                               uint64_t samples,
                               size_t points,
                               uint64_t seed,
                               bool constant_function,
                               double *rel_l2_error);

/**
 * The built-in manifest covering every check.
 */
enum GrStatus gr_manifest_default(struct GrManifest **out);

/**
 * Parse a manifest from TOML text (`[[check]]` tables).
 */
enum GrStatus gr_manifest_parse(const char *toml, struct GrManifest **out);

enum GrStatus gr_manifest_len(const struct GrManifest *manifest, size_t *out);

void gr_manifest_free(struct GrManifest *manifest);

/**
 * Run every manifest entry. Entries without a seed take `seed`; `shards`
 * = 0 uses the default split, which never changes the results.
 * Entries that cannot run are listed in the report, not returned as errors.
 */
enum GrStatus gr_suite_run(const struct GrManifest *manifest,
                           uint64_t seed,
                           size_t shards,
                           struct GrReport **out);

/**
 * Run one check. `spec_json` is a JSON object of parameters (field, n, k,
 * kp, lambda, samples, ...) or NULL for the defaults; a seed in it
 * overrides `seed`.
 */
enum GrStatus gr_check_run(const char *id,
                           const char *spec_json,
                           uint64_t seed,
                           struct GrReport **out);

/**
 * Counts of the run: total entries, passed, failed, and entries that
 * could not run.
 */
enum GrStatus gr_report_summary(const struct GrReport *report,
                                size_t *total,
                                size_t *passed,
                                size_t *failed,
                                size_t *errored);

enum GrStatus gr_report_all_passed(const struct GrReport *report, bool *out);

/**
 * Serialize a report as JSON or CSV. Release the string with
 * `gr_string_free`.
 */
enum GrStatus gr_report_render(const struct GrReport *report, uint32_t format, char **out);

void gr_report_free(struct GrReport *report);

void gr_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRASSMANN_RADON_H */
