#ifndef DGATOOL_H
#define DGATOOL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum DgaStatus {
  DGA_STATUS_OK = 0,
  DGA_STATUS_NULL_ARGUMENT = 1,
  DGA_STATUS_INVALID_UTF8 = 2,
  DGA_STATUS_PARSE_ERROR = 3,
  DGA_STATUS_VALIDATION_ERROR = 4,
  DGA_STATUS_CAP_EXCEEDED = 5,
  DGA_STATUS_NOT_FLAT = 6,
  DGA_STATUS_UNKNOWN_KEY = 7,
  DGA_STATUS_COMPUTE_ERROR = 8,
} DgaStatus;

/**
 * Opaque model handle.
 */
typedef struct DgaModel DgaModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Returns the most recent error message on this thread, or null when none
 * has been recorded. Free with `dga_string_free`.
 *
 * # Safety
 * `out` must be a valid pointer to a `char *` slot.
 */
enum DgaStatus dga_last_error_message(char **out);

/**
 * Frees a string previously returned by this library.
 *
 * # Safety
 * `s` must be null or a pointer obtained from a dgatool function.
 */
void dga_string_free(char *s);

/**
 * Parses and validates a model from JSON.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` a valid slot.
 */
enum DgaStatus dga_model_from_json(const char *json, struct DgaModel **out);

/**
 * Builds a named catalog model.
 *
 * # Safety
 * `key` must be a NUL-terminated string; `out` a valid slot.
 */
enum DgaStatus dga_model_from_catalog(const char *key, struct DgaModel **out);

/**
 * Releases a model handle.
 *
 * # Safety
 * `model` must be null or a pointer from a dgatool constructor, not yet
 * freed.
 */
void dga_model_free(struct DgaModel *model);

/**
 * Degree cap of the model, or -1 on a null handle.
 */
int64_t dga_model_cap(const struct DgaModel *model);

/**
 * Dimension of one degree, or -1 when unknown (above the cap of an
 * incomplete model) or on a null handle.
 */
int64_t dga_model_dim(const struct DgaModel *model, uint32_t degree);

/**
 * Serializes the model back to JSON.
 *
 * # Safety
 * `model` must be a live handle; `out` a valid slot.
 */
enum DgaStatus dga_model_to_json(const struct DgaModel *model, char **out);

/**
 * Betti numbers in degrees `0..=upto`, written into a caller buffer of at
 * least `upto + 1` entries.
 *
 * # Safety
 * `model` must be a live handle and `out` must point at `len` writable
 * `uint64_t` slots.
 */
enum DgaStatus dga_betti(const struct DgaModel *model, uint32_t upto, uint64_t *out, uintptr_t len);

/**
 * Triple Massey product of three cocycle expressions; the result is a
 * JSON object with the representative, indeterminacy dimension, and the
 * vanishing verdict.
 *
 * # Safety
 * All strings NUL-terminated; `model` live; `out` a valid slot.
 */
enum DgaStatus dga_massey_triple_json(const struct DgaModel *model,
                                      const char *a,
                                      const char *b,
                                      const char *c,
                                      char **out);

/**
 * Regular-sequence verdict as JSON (`verdict`, optional `witness`).
 *
 * # Safety
 * `model` live; `seq` points at `seq_len` NUL-terminated strings; `out`
 * a valid slot.
 */
enum DgaStatus dga_is_q_regular_json(const struct DgaModel *model,
                                     const char *const *seq,
                                     uintptr_t seq_len,
                                     uint32_t q,
                                     char **out);

/**
 * Formality certificate as JSON (`regular`, `verified`, `quotient_dims`).
 *
 * # Safety
 * Same contract as `dga_is_q_regular_json`.
 */
enum DgaStatus dga_formality_json(const struct DgaModel *model,
                                  const char *const *seq,
                                  uintptr_t seq_len,
                                  uint32_t q,
                                  char **out);

/**
 * Poincaré duality certificate as JSON.
 *
 * # Safety
 * `model` live; `out` a valid slot.
 */
enum DgaStatus dga_pd_check_json(const struct DgaModel *model, uint32_t n, char **out);

/**
 * Twisted cohomology dimensions of a flat connection given as an omega
 * JSON document (`{"lie": ..., "coeffs": [[...]]}`).
 *
 * # Safety
 * `model` live; `omega_json` NUL-terminated; `out` a valid slot.
 */
enum DgaStatus dga_resonance_dims_json(const struct DgaModel *model,
                                       const char *omega_json,
                                       uint32_t upto,
                                       char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DGATOOL_H */
