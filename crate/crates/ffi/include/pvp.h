#ifndef PVP_H
#define PVP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Values 0 to 3 match the CLI exit codes and come with a
 * report; the others mean no report was produced.
 */
typedef enum PvpStatus {
  PVP_STATUS_OK = 0,
  PVP_STATUS_CHECK_FAILED = 1,
  PVP_STATUS_INVALID_INPUT = 2,
  PVP_STATUS_BUDGET_EXCEEDED = 3,
  PVP_STATUS_NULL_ARGUMENT = 10,
  PVP_STATUS_INVALID_UTF8 = 11,
  PVP_STATUS_UNKNOWN_COMMAND = 12,
  PVP_STATUS_PANIC = 13,
} PvpStatus;

/**
 * Opaque run configuration plus the last error message.
 */
typedef struct PvpSession PvpSession;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a session with default limits, seed 0 and one worker.
 */
struct PvpSession *pvp_session_new(void);

/**
 * # Safety
 * `session` must come from [`pvp_session_new`] and not be used afterwards.
 */
void pvp_session_free(struct PvpSession *session);

/**
 * # Safety
 * `session` must be null or a live session.
 */
enum PvpStatus pvp_session_set_seed(struct PvpSession *session, uint64_t seed);

/**
 * Worker threads for `selftest`; 0 uses one per core.
 *
 * # Safety
 * `session` must be null or a live session.
 */
enum PvpStatus pvp_session_set_jobs(struct PvpSession *session, size_t jobs);

/**
 * # Safety
 * `session` must be null or a live session.
 */
enum PvpStatus pvp_session_set_max_order(struct PvpSession *session, size_t max_order);

/**
 * # Safety
 * `session` must be null or a live session.
 */
enum PvpStatus pvp_session_set_budget(struct PvpSession *session, size_t budget);

/**
 * # Safety
 * `session` must be null or a live session.
 */
enum PvpStatus pvp_session_set_max_group_order(struct PvpSession *session, size_t max_group_order);

/**
 * Runs `command` (a CLI subcommand name such as `"prolong"`) on `input`.
 *
 * `input` may be null for `selftest`. On statuses 0 to 3, `*report` receives
 * the JSON report, to be released with [`pvp_string_free`]; otherwise it is
 * set to null and [`pvp_last_error`] describes the failure.
 *
 * # Safety
 * `session` must be a live session, `command` and a non-null `input` must be
 * NUL-terminated strings, and `report` must be a writable pointer.
 */
enum PvpStatus pvp_run(struct PvpSession *session,
                       const char *command,
                       const char *input,
                       char **report);

/**
 * Message for the last failed call on `session`, or null. Valid until the
 * next call on the same session.
 *
 * # Safety
 * `session` must be null or a live session.
 */
const char *pvp_last_error(const struct PvpSession *session);

/**
 * # Safety
 * `text` must be null or a string returned by this library, freed once.
 */
void pvp_string_free(char *text);

/**
 * Library version as a static string.
 */
const char *pvp_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PVP_H */
