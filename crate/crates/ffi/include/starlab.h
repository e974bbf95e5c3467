#ifndef STARLAB_H
#define STARLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum StarlabStatus {
  STARLAB_STATUS_OK = 0,
  /*
   A verification ran and at least one verdict failed, or an internal check failed.
   */
  STARLAB_STATUS_FAILED = 1,
  STARLAB_STATUS_BAD_INPUT = 2,
  STARLAB_STATUS_BUDGET = 3,
  STARLAB_STATUS_GATE = 4,
  STARLAB_STATUS_NULL_POINTER = 5,
  STARLAB_STATUS_PANIC = 6,
} StarlabStatus;

/*
 A ring model with its lattice, orbits and closure table.
 */
typedef struct StarlabEngine StarlabEngine;

typedef struct StarlabField StarlabField;

typedef struct StarlabSemigroup StarlabSemigroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Library version as a static NUL-terminated string.
 */
const char *starlab_version(void);

/*
 Message for the last failed call on this thread; empty after a successful call. Valid
 until the next call into the library from this thread.
 */
const char *starlab_last_error(void);

/*
 # Safety
 `s` must be null or a string returned by this library, not yet freed.
 */
void starlab_string_free(char *s);

/*
 # Safety
 `gens` must point to `len` readable values and `out` must be writable.
 */
enum StarlabStatus starlab_semigroup_new(const uint32_t *gens,
                                         size_t len,
                                         struct StarlabSemigroup **out);

/*
 `⟨n, n+1, ..., 2n-3, 2n-1⟩`.

 # Safety
 `out` must be writable.
 */
enum StarlabStatus starlab_semigroup_kunz_family(uint32_t n, struct StarlabSemigroup **out);

/*
 # Safety
 `s` must be null or a live handle.
 */
void starlab_semigroup_free(struct StarlabSemigroup *s);

/*
 Frobenius number, or -1 for a null handle.

 # Safety
 `s` must be null or a live handle.
 */
int64_t starlab_semigroup_frobenius(const struct StarlabSemigroup *s);

/*
 Number of gaps, or -1 for a null handle.

 # Safety
 `s` must be null or a live handle.
 */
int64_t starlab_semigroup_genus(const struct StarlabSemigroup *s);

/*
 Field of order `q` with the default modulus.

 # Safety
 `out` must be writable.
 */
enum StarlabStatus starlab_field_new(uint32_t q, struct StarlabField **out);

/*
 # Safety
 `f` must be null or a live handle.
 */
void starlab_field_free(struct StarlabField *f);

/*
 Builds `F_0`, unit orbits and the closure table for `K[[S]]` under default budgets.

 # Safety
 `s` and `f` must be live handles and `out` writable.
 */
enum StarlabStatus starlab_engine_new(const struct StarlabSemigroup *s,
                                      const struct StarlabField *f,
                                      struct StarlabEngine **out);

/*
 # Safety
 `e` must be null or a live handle.
 */
void starlab_engine_free(struct StarlabEngine *e);

/*
 `|F_0(R)|`, or -1 for a null handle.

 # Safety
 `e` must be null or a live handle.
 */
int64_t starlab_engine_ideal_count(const struct StarlabEngine *e);

/*
 Number of unit orbits in `F_0(R)`, or -1 for a null handle.

 # Safety
 `e` must be null or a live handle.
 */
int64_t starlab_engine_orbit_count(const struct StarlabEngine *e);

/*
 `|Star(R)|`.

 # Safety
 `e` must be a live handle and `out` writable.
 */
enum StarlabStatus starlab_engine_count_stars(const struct StarlabEngine *e, uint64_t *out);

/*
 Runs the counterexample verification and writes the JSON report to `out_json`. The
 status reflects the verdicts as for the command line.

 # Safety
 `s` and `f` must be live handles and `out_json` writable.
 */
enum StarlabStatus starlab_kunz_counterexample(const struct StarlabSemigroup *s,
                                               const struct StarlabField *f,
                                               char **out_json);

/*
 Lower-bound certificate for `⟨n, ..., 2n-3, 2n-1⟩`, as a JSON report.

 # Safety
 `f` must be a live handle and `out_json` writable.
 */
enum StarlabStatus starlab_kunz_lower_bound(uint32_t n,
                                            const struct StarlabField *f,
                                            char **out_json);

/*
 Parses comma-separated generators, as accepted by the command line.

 # Safety
 `text` must be a NUL-terminated string and `out` writable.
 */
enum StarlabStatus starlab_semigroup_parse(const char *text, struct StarlabSemigroup **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STARLAB_H */
