#ifndef HJLINE_H
#define HJLINE_H

/* Generated by cbindgen from hjline-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible entry point.
 */
typedef enum HjStatus {
  HJ_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  HJ_STATUS_NULL_POINTER = 1,
  /**
   * Arguments violate a precondition (range, parity, dimensions).
   */
  HJ_STATUS_INVALID_ARGUMENT = 2,
  /**
   * Malformed text: word, template, or coloring file.
   */
  HJ_STATUS_PARSE_ERROR = 3,
  /**
   * The requested search exceeds the configured budget.
   */
  HJ_STATUS_BUDGET_EXCEEDED = 4,
  /**
   * Reading or writing a file failed.
   */
  HJ_STATUS_IO_ERROR = 5,
  /**
   * The queried value is absent (e.g. min_q of a scan with no
   * monochromatic line).
   */
  HJ_STATUS_NO_VALUE = 6,
  /**
   * An internal invariant failed; the library state is unspecified.
   */
  HJ_STATUS_PANIC = 7,
} HjStatus;

/**
 * A total coloring of [m]^n.
 */
typedef struct HjColoring HjColoring;

/**
 * Outcome of an exhaustive line scan.
 */
typedef struct HjReport HjReport;

/**
 * Letter weights over Z_r.
 */
typedef struct HjWeights HjWeights;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string.
 */
const char *hj_version(void);

/**
 * Message of the last failure on this thread (empty if none). Valid until
 * the next failing call on the same thread.
 */
const char *hj_last_error_message(void);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must have been returned by an hjline function and not freed before.
 */
void hj_string_free(char *s);

/**
 * Builds a weight vector mod `r` from `t_len` (possibly negative) entries.
 *
 * # Safety
 * `t` must point to `t_len` readable values; `out` must be writable.
 */
enum HjStatus hj_weights_new(uint32_t r, const int64_t *t, size_t t_len, struct HjWeights **out);

/**
 * The canonical weights (2, -1, 2) mod an odd r >= 3.
 *
 * # Safety
 * `out` must be writable.
 */
enum HjStatus hj_weights_canonical(uint32_t r, struct HjWeights **out);

/**
 * # Safety
 * `weights` must be a handle from this library, not yet freed.
 */
void hj_weights_free(struct HjWeights *weights);

/**
 * Contraction of a word given as ASCII digits ("-" for the empty word).
 *
 * # Safety
 * `word` must be a valid NUL-terminated string; `out` writable.
 */
enum HjStatus hj_word_contract(const char *word, char **out);

/**
 * The word 1 w 1 for a word given as ASCII digits.
 *
 * # Safety
 * `word` must be a valid NUL-terminated string; `out` writable.
 */
enum HjStatus hj_word_plus_extend(const char *word, char **out);

/**
 * Color of a word under the weight-chain coloring.
 *
 * # Safety
 * `word` must be a valid string, `weights` a live handle, `out_color`
 * writable.
 */
enum HjStatus hj_tplus_color(const char *word,
                             const struct HjWeights *weights,
                             uint32_t *out_color);

/**
 * Minimal interval count of a template's wildcard set. The template uses
 * digits plus '*' over alphabet [m].
 *
 * # Safety
 * `template` must be a valid string; `out_q` writable.
 */
enum HjStatus hj_template_interval_count(const char *template_, uint8_t m, uint32_t *out_q);

/**
 * The weight-chain coloring of [m]^n, m given by the weight count. Takes
 * ownership of nothing; `weights` is copied.
 *
 * # Safety
 * `weights` must be a live handle; `out` writable.
 */
enum HjStatus hj_coloring_tplus(size_t n, const struct HjWeights *weights, struct HjColoring **out);

/**
 * The even-r construction: canonical chain at modulus r-1 viewed as an
 * r-coloring.
 *
 * # Safety
 * `out` must be writable.
 */
enum HjStatus hj_coloring_even_r(uint32_t r, size_t n, struct HjColoring **out);

/**
 * A seeded pseudorandom r-coloring of [m]^n.
 *
 * # Safety
 * `out` must be writable.
 */
enum HjStatus hj_coloring_random(uint8_t m,
                                 size_t n,
                                 uint32_t r,
                                 uint64_t seed,
                                 struct HjColoring **out);

/**
 * Loads a coloring table file (`hjcolor 1 m=<m> n=<n> r=<r>` header).
 *
 * # Safety
 * `path` must be a valid string; `out` writable.
 */
enum HjStatus hj_coloring_load(const char *path, struct HjColoring **out);

/**
 * Materializes any coloring as a table file.
 *
 * # Safety
 * `coloring` must be a live handle; `path` a valid string.
 */
enum HjStatus hj_coloring_save(const struct HjColoring *coloring, const char *path);

/**
 * # Safety
 * `coloring` must be a handle from this library, not yet freed.
 */
void hj_coloring_free(struct HjColoring *coloring);

/**
 * # Safety
 * `coloring` must be a live handle.
 */
uint8_t hj_coloring_m(const struct HjColoring *coloring);

/**
 * # Safety
 * `coloring` must be a live handle.
 */
size_t hj_coloring_n(const struct HjColoring *coloring);

/**
 * # Safety
 * `coloring` must be a live handle.
 */
uint32_t hj_coloring_r(const struct HjColoring *coloring);

/**
 * Color of one word under a coloring.
 *
 * # Safety
 * `coloring` must be a live handle, `word` a valid string, `out_color`
 * writable.
 */
enum HjStatus hj_coloring_color(const struct HjColoring *coloring,
                                const char *word,
                                uint32_t *out_color);

/**
 * Exhaustive monochromatic-line scan. `workers = 0` uses the available
 * parallelism; `budget = 0` keeps the default cap.
 *
 * # Safety
 * `coloring` must be a live handle; `out` writable.
 */
enum HjStatus hj_scan(const struct HjColoring *coloring,
                      uint32_t workers,
                      uint64_t budget,
                      struct HjReport **out);

/**
 * # Safety
 * `report` must be a handle from this library, not yet freed.
 */
void hj_report_free(struct HjReport *report);

/**
 * # Safety
 * `report` must be a live handle.
 */
uint64_t hj_report_templates_scanned(const struct HjReport *report);

/**
 * # Safety
 * `report` must be a live handle.
 */
uint64_t hj_report_monochromatic_count(const struct HjReport *report);

/**
 * Minimum interval count among monochromatic lines;
 * `HJ_STATUS_NO_VALUE` when the scan found none.
 *
 * # Safety
 * `report` must be a live handle; `out_q` writable.
 */
enum HjStatus hj_report_min_q(const struct HjReport *report, uint32_t *out_q);

/**
 * Witness template text; `HJ_STATUS_NO_VALUE` when the scan found no
 * monochromatic line.
 *
 * # Safety
 * `report` must be a live handle; `out` writable.
 */
enum HjStatus hj_report_witness(const struct HjReport *report, char **out);

/**
 * The report as a JSON document.
 *
 * # Safety
 * `report` must be a live handle; `out` writable.
 */
enum HjStatus hj_report_json(const struct HjReport *report, char **out);

/**
 * Verifies the interval bound for odd r at dimension n: every
 * monochromatic line of the canonical coloring needs at least r intervals.
 * Writes the verdict and, for a counterexample, its template into
 * `out_witness` (optional; pass NULL to skip).
 *
 * # Safety
 * `out_verified` must be writable; `out_witness` null or writable.
 */
enum HjStatus hj_verify(uint32_t r,
                        size_t n,
                        uint32_t workers,
                        bool *out_verified,
                        char **out_witness);

/**
 * The even-r companion of [`hj_verify`]: checks the r-1 interval bound.
 *
 * # Safety
 * `out_verified` must be writable; `out_witness` null or writable.
 */
enum HjStatus hj_verify_even(uint32_t r,
                             size_t n,
                             uint32_t workers,
                             bool *out_verified,
                             char **out_witness);

/**
 * Finds a monochromatic single-interval two-letter line from the colors
 * of the n+1 threshold words; `HJ_STATUS_NO_VALUE` if all colors are
 * distinct.
 *
 * # Safety
 * `colors` must point to `len` readable values; `out` writable.
 */
enum HjStatus hj_pigeonhole_line(const uint32_t *colors, size_t len, char **out);

/**
 * Brute-force decision whether every r-coloring of [m]^n contains a
 * monochromatic line. `max_cells = 0` keeps the default guard of 16.
 *
 * # Safety
 * `out_every` must be writable.
 */
enum HjStatus hj_decide_all_colorings(uint8_t m,
                                      size_t n,
                                      uint32_t r,
                                      uint64_t max_cells,
                                      bool *out_every);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HJLINE_H */
