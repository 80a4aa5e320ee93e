#ifndef NTOROIDAL_H
#define NTOROIDAL_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Success.
#define NTOR_OK 0

// A required pointer argument was null.
#define NTOR_ERR_NULL 1

// An input string was not valid UTF-8 or failed to parse.
#define NTOR_ERR_PARSE 2

// The requested family/rank/N-fold combination is not supported.
#define NTOR_ERR_UNSUPPORTED 3

// The supplied matrix violates the GIM axioms.
#define NTOR_ERR_AXIOM 4

// The catalog ran to completion but at least one relation failed.
#define NTOR_ERR_VERIFY_FAILED 5

// The truncated basis exceeded the evaluation budget.
#define NTOR_ERR_BUDGET 6

// An internal panic was caught at the ABI boundary.
#define NTOR_ERR_INTERNAL 7

// Opaque handle to a generalized intersection matrix.
typedef struct NtorGim NtorGim;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Build the GIM of N-fold affinization for `family` ("A".."G"), `rank`, and
// `nfold` ≥ 1. On success `*out` owns a new handle.
//
// # Safety
// `family` must be a NUL-terminated string; `out` must be a valid pointer.
int32_t ntor_gim_build(const char *family, uint32_t rank, uint32_t nfold, struct NtorGim **out);

// Parse a GIM from its JSON form and validate the axioms. Returns
// `NTOR_ERR_AXIOM` (without producing a handle) if validation fails.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be a valid pointer.
int32_t ntor_gim_parse_json(const char *json, struct NtorGim **out);

// Side length of the matrix; 0 if the handle is null.
//
// # Safety
// `gim` must be null or a live handle from this library.
uint64_t ntor_gim_size(const struct NtorGim *gim);

// Entry at row `i`, column `j` (positional, 0-based). Out of range is
// `NTOR_ERR_UNSUPPORTED`.
//
// # Safety
// `gim` must be a live handle; `out` must be a valid pointer.
int32_t ntor_gim_entry(const struct NtorGim *gim, uint64_t i, uint64_t j, int64_t *out);

// Serialize the matrix as JSON into a library-owned string.
//
// # Safety
// `gim` must be a live handle; `out` must be a valid pointer.
int32_t ntor_gim_to_json(const struct NtorGim *gim, char **out);

// Render the Dynkin diagram in Graphviz DOT form.
//
// # Safety
// `gim` must be a live handle; `out` must be a valid pointer.
int32_t ntor_gim_to_dot(const struct NtorGim *gim, char **out);

// Verify a relation catalog ("toroidal", "simplified", or "gim") on the
// truncated level-one Fock module. `budget_cap` 0 means the library default.
// The JSON report (an array of per-relation objects) is written to
// `out_report` when non-null, for `NTOR_OK` and `NTOR_ERR_VERIFY_FAILED`
// alike.
//
// # Safety
// `family` and `catalog` must be NUL-terminated strings; `out_report` must
// be null or a valid pointer.
int32_t ntor_verify(const char *family,
                    uint32_t rank,
                    uint32_t nfold,
                    const char *catalog,
                    uint32_t degree_bound,
                    int32_t beta_bound,
                    uint64_t budget_cap,
                    char **out_report);

// Free a handle from `ntor_gim_build`/`ntor_gim_parse_json`. Null is a no-op.
//
// # Safety
// `gim` must be null or a live handle; it must not be used afterwards.
void ntor_gim_free(struct NtorGim *gim);

// Free a string allocated by this library. Null is a no-op.
//
// # Safety
// `s` must be null or a string returned by this library; it must not be
// used afterwards.
void ntor_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NTOROIDAL_H */
