#ifndef FOLIAHODGE_H
#define FOLIAHODGE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Which cohomology a Betti query refers to.
 */
typedef enum FhComplex {
  FH_COMPLEX_BASIC = 0,
  FH_COMPLEX_DE_RHAM = 1,
  FH_COMPLEX_DELTA = 2,
} FhComplex;

/**
 * Status codes returned by every fallible function.
 */
typedef enum FhStatus {
  FH_STATUS_OK = 0,
  FH_STATUS_NULL_ARGUMENT = 1,
  FH_STATUS_INVALID_UTF8 = 2,
  FH_STATUS_PARSE = 3,
  FH_STATUS_VALIDATION = 4,
  FH_STATUS_UNKNOWN_MODEL = 5,
  FH_STATUS_PRECONDITION = 6,
  FH_STATUS_INCONSISTENCY = 7,
  FH_STATUS_DEGREE = 8,
  FH_STATUS_DIMENSION = 9,
  FH_STATUS_IO = 10,
  FH_STATUS_BUFFER_TOO_SMALL = 11,
  FH_STATUS_PANIC = 12,
} FhStatus;

/**
 * Opaque handle to the cohomology of one model.
 */
typedef struct FhAnalysis FhAnalysis;

/**
 * Opaque model handle.
 */
typedef struct FhModel FhModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *fh_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void fh_string_free(char *s);

/**
 * Parses a model file (text or JSON).
 *
 * # Safety
 * `source` must be a nul-terminated string; `out` must be writable.
 */
enum FhStatus fh_model_load(const char *source, struct FhModel **out);

/**
 * Loads a builtin model by name (without the `zoo:` prefix).
 *
 * # Safety
 * `name` must be a nul-terminated string; `out` must be writable.
 */
enum FhStatus fh_model_zoo(const char *name, struct FhModel **out);

/**
 * # Safety
 * `model` must come from this library and not have been freed. NULL is
 * ignored.
 */
void fh_model_free(struct FhModel *model);

/**
 * Half the number of transverse generators.
 *
 * # Safety
 * `model` must be a live handle; `out` must be writable.
 */
enum FhStatus fh_model_half_dim(const struct FhModel *model, size_t *out);

/**
 * # Safety
 * `model` must be a live handle; `out` must be writable.
 */
enum FhStatus fh_model_is_contact(const struct FhModel *model, bool *out);

/**
 * The model in model-file text form; free with [`fh_string_free`].
 *
 * # Safety
 * `model` must be a live handle; `out` must be writable.
 */
enum FhStatus fh_model_render(const struct FhModel *model, char **out);

/**
 * Boothby–Wang extension by a new generator `generator`.
 *
 * # Safety
 * `model` must be a live handle, `generator` a nul-terminated string and
 * `out` writable.
 */
enum FhStatus fh_model_boothby_wang(const struct FhModel *model,
                                    const char *generator,
                                    struct FhModel **out);

/**
 * Computes all cohomology of a model.
 *
 * # Safety
 * `model` must be a live handle; `out` must be writable.
 */
enum FhStatus fh_analysis_new(const struct FhModel *model, struct FhAnalysis **out);

/**
 * # Safety
 * `analysis` must come from this library and not have been freed. NULL is
 * ignored.
 */
void fh_analysis_free(struct FhAnalysis *analysis);

/**
 * Writes Betti numbers into `buf[0..cap]` and their count into `len`.
 * Returns `BufferTooSmall` (with `len` set) when `cap` is too small.
 *
 * # Safety
 * `analysis` must be a live handle, `buf` valid for `cap` writes (or NULL
 * with `cap == 0`), `len` writable.
 */
enum FhStatus fh_analysis_betti(const struct FhAnalysis *analysis,
                                enum FhComplex complex,
                                size_t *buf,
                                size_t cap,
                                size_t *len);

/**
 * Level `s` of the transverse Lefschetz property (`-1` when it fails at
 * `s = 0`).
 *
 * # Safety
 * `analysis` must be a live handle; `out` must be writable.
 */
enum FhStatus fh_analysis_lefschetz_level(const struct FhAnalysis *analysis, int64_t *out);

/**
 * Level `s` of the dδ-lemma.
 *
 * # Safety
 * `analysis` must be a live handle; `out` must be writable.
 */
enum FhStatus fh_analysis_dd_level(const struct FhAnalysis *analysis, int64_t *out);

/**
 * Level `s` of the contact Lefschetz property; `Precondition` without eta.
 *
 * # Safety
 * `analysis` must be a live handle; `out` must be writable.
 */
enum FhStatus fh_analysis_contact_level(const struct FhAnalysis *analysis, int64_t *out);

/**
 * # Safety
 * `analysis` must be a live handle; `out` must be writable.
 */
enum FhStatus fh_analysis_cup_length(const struct FhAnalysis *analysis, size_t *out);

/**
 * Runs the command line with `argv[0..argc]` (without the program name).
 * Stores the exit code and the standard output; free the output with
 * [`fh_string_free`].
 *
 * # Safety
 * `argv` must hold `argc` nul-terminated strings; `exit_code` and
 * `out_stdout` must be writable.
 */
enum FhStatus fh_run_cli(const char *const *argv,
                         size_t argc,
                         int32_t *exit_code,
                         char **out_stdout);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FOLIAHODGE_H */
