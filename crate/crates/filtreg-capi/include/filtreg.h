#ifndef FILTREG_H
#define FILTREG_H

/* C interface to the filtration-regularity library.
 *
 * Strings returned through out parameters are heap-allocated and must be
 * released with filtreg_string_free(); reports with filtreg_report_free().
 * This header tracks the declarations in src/lib.rs; regenerate with
 * cbindgen when available (see cbindgen.toml).
 */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define FILTREG_OK 0
#define FILTREG_ERR_CHECK_FAILED 1
#define FILTREG_ERR_CONFIG 2
#define FILTREG_ERR_COMPUTE 3
#define FILTREG_ERR_NULL_ARGUMENT 4
#define FILTREG_ERR_BAD_UTF8 5
#define FILTREG_ERR_BOUND 6

/* Opaque experiment report. */
typedef struct FiltregReport FiltregReport;

/* Runs an experiment from configuration text (the line-oriented key/value
 * format accepted by the `filtreg` tool). On success, *out_report owns the
 * report. On failure, *out_error (when non-null) receives a message. */
int32_t filtreg_run(const char *config_text,
                    FiltregReport **out_report,
                    char **out_error);

/* JSON serialization; timings are included when with_timings is nonzero. */
char *filtreg_report_json(const FiltregReport *report, int32_t with_timings);

/* CSV serialization, one row per check, with a header line. */
char *filtreg_report_csv(const FiltregReport *report);

/* Number of failed checks. */
uint32_t filtreg_report_failures(const FiltregReport *report);

/* Pass/fail/skip tallies; out pointers may be null. */
int32_t filtreg_report_tally(const FiltregReport *report,
                             uint32_t *out_pass,
                             uint32_t *out_fail,
                             uint32_t *out_skip);

void filtreg_report_free(FiltregReport *report);

void filtreg_string_free(char *s);

/* Evaluates a bound formula by registry identifier (for example id "A3"
 * with args "d=2,D=1,r=0"); the value is returned as a decimal string of
 * arbitrary precision. */
int32_t filtreg_bound(const char *id, const char *args, char **out_value);

/* Runs the built-in corpus; filter may be null. Returns FILTREG_OK when
 * every check passes. */
int32_t filtreg_corpus(const char *filter,
                       uint64_t seed,
                       uint32_t jobs,
                       uint32_t *out_pass,
                       uint32_t *out_fail,
                       uint32_t *out_skip);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* FILTREG_H */
