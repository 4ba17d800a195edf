#ifndef GINZERO_H
#define GINZERO_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GzStatus {
  GZ_STATUS_OK = 0,
  GZ_STATUS_NULL = 1,
  GZ_STATUS_UTF8 = 2,
  GZ_STATUS_PARSE = 3,
  GZ_STATUS_INVALID_ARG = 4,
  GZ_STATUS_PRECONDITION = 5,
  GZ_STATUS_CERTIFICATION = 6,
  GZ_STATUS_INTERNAL = 7,
} GzStatus;

// A parsed job: ring, generators and run options.
typedef struct GzIdeal GzIdeal;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses a JSON job (`{"vars": [...], "char": c, "gens": [...]}`).
//
// # Safety
// `json` must be a NUL-terminated string and `out` a writable pointer.
enum GzStatus gz_ideal_parse(const char *json, struct GzIdeal **out);

// # Safety
// `ideal` must come from [`gz_ideal_parse`] and not be freed twice. Null is ignored.
void gz_ideal_free(struct GzIdeal *ideal);

// # Safety
// `ideal` must be a live handle and `out` writable.
enum GzStatus gz_ideal_num_vars(const struct GzIdeal *ideal, size_t *out);

// Number of nonzero generators after reduction modulo the characteristic.
//
// # Safety
// `ideal` must be a live handle and `out` writable.
enum GzStatus gz_ideal_num_gens(const struct GzIdeal *ideal, size_t *out);

// Generator `index` as text; free the result with [`gz_string_free`].
//
// # Safety
// `ideal` must be a live handle and `out` writable.
enum GzStatus gz_ideal_generator(const struct GzIdeal *ideal, size_t index, char **out);

// `dim (A/I)_d`.
//
// # Safety
// `ideal` must be a live handle and `out` writable.
enum GzStatus gz_ideal_hilbert_value(const struct GzIdeal *ideal, int64_t d, int64_t *out);

// `reg I`, read off the zero-generic initial ideal computed with `seed`.
// The zero ideal reports `-1`.
//
// # Safety
// `ideal` must be a live handle and `out` writable.
enum GzStatus gz_ideal_regularity(const struct GzIdeal *ideal, uint64_t seed, int64_t *out);

// The job as JSON; free the result with [`gz_string_free`].
//
// # Safety
// `ideal` must be a live handle and `out` writable.
enum GzStatus gz_ideal_to_json(const struct GzIdeal *ideal, char **out);

// Runs a CLI command and returns its JSON report and exit code (0 pass,
// 2 audit failure). A null `command` runs the command stored in the job.
//
// # Safety
// `ideal` must be a live handle, `command` null or NUL-terminated, and
// `out_json` writable. `out_exit` may be null.
enum GzStatus gz_run_job(const struct GzIdeal *ideal,
                         const char *command,
                         char **out_json,
                         int32_t *out_exit);

// # Safety
// `s` must be a string returned by this library, or null.
void gz_string_free(char *s);

// Message for the last failed call on this thread, empty after a success.
// The pointer stays valid until the next library call on the same thread.
const char *gz_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GINZERO_H */
