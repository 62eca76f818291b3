#ifndef BIRAM_H
#define BIRAM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/*
 Result codes. Values 1 to 4 coincide with the CLI exit codes.
 */
typedef enum BiramStatus {
  BIRAM_STATUS_OK = 0,
  BIRAM_STATUS_IO = 1,
  BIRAM_STATUS_CONFIG = 2,
  BIRAM_STATUS_BUDGET = 3,
  BIRAM_STATUS_INVARIANT = 4,
  BIRAM_STATUS_NULL_ARGUMENT = 5,
  BIRAM_STATUS_INVALID_UTF8 = 6,
  BIRAM_STATUS_BUFFER_TOO_SMALL = 7,
  BIRAM_STATUS_PANIC = 8,
} BiramStatus;

typedef enum BiramLattice {
  BIRAM_LATTICE_EISENSTEIN = 0,
  BIRAM_LATTICE_GAUSS = 1,
  BIRAM_LATTICE_MUMFORD = 2,
} BiramLattice;

/*
 Right G-set of the construction; `Regular` gives the Cayley bigraph.
 */
typedef enum BiramAction {
  BIRAM_ACTION_REGULAR = 0,
  BIRAM_ACTION_PROJECTIVE_PLANE = 1,
  BIRAM_ACTION_ISOTROPIC = 2,
} BiramAction;

/*
 Opaque bigraph handle.
 */
typedef struct BiramBigraph BiramBigraph;

/*
 Opaque spectrum-and-verdict handle.
 */
typedef struct BiramReport BiramReport;

typedef struct BiramShape {
  size_t n_left;
  size_t n_right;
  /*
   K+1
   */
  size_t left_degree;
  /*
   k+1
   */
  size_t right_degree;
  bool weighted;
} BiramShape;

typedef struct BiramVerdict {
  bool weakly;
  bool adj;
  bool fully;
  size_t excessiveness;
  /*
   NaN when the bigraph is not a biexpander
   */
  double biexpander_eps;
  double perron;
} BiramVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or NULL when there is none.
 The string is newly allocated; release it with [`biram_string_free`].
 */
char *biram_last_error(void);

/*
 Static description of a status code. Never NULL; do not free.
 */
const char *biram_status_name(enum BiramStatus status);

/*
 Build the Cayley (`Regular`) or Schreier bigraph for lattice data (p, q)
 with default budgets.

 # Safety
 `out` must be a valid pointer to writable storage for one handle. On
 success `*out` owns a bigraph that must be released with
 [`biram_bigraph_free`]; on failure `*out` is left untouched.
 */
enum BiramStatus biram_bigraph_construct(enum BiramLattice lattice,
                                         uint32_t p,
                                         uint32_t q,
                                         enum BiramAction action,
                                         struct BiramBigraph **out);

/*
 Parse a bigraph JSON document as written by the CLI `construct` command.

 # Safety
 `json` must be a NUL-terminated string valid for reads. `out` must be a
 valid pointer to writable storage for one handle; release the result with
 [`biram_bigraph_free`].
 */
enum BiramStatus biram_bigraph_from_json(const char *json, struct BiramBigraph **out);

/*
 Serialize a bigraph to schema-versioned JSON.

 # Safety
 `g` must be a live handle from this library. `out` must be a valid pointer
 to writable storage; release the string with [`biram_string_free`].
 */
enum BiramStatus biram_bigraph_to_json(const struct BiramBigraph *g, char **out);

/*
 # Safety
 `g` must be a live handle from this library and `out` a valid pointer to a
 writable [`BiramShape`].
 */
enum BiramStatus biram_bigraph_shape(const struct BiramBigraph *g, struct BiramShape *out);

/*
 Release a bigraph. NULL is ignored.

 # Safety
 `g` must be NULL or a handle from this library that has not been freed.
 */
void biram_bigraph_free(struct BiramBigraph *g);

/*
 Spectrum with exact excessiveness and the Ramanujan verdict at the default
 tolerance.

 # Safety
 `g` must be a live bigraph handle and `out` a valid pointer to writable
 storage for one handle; release the result with [`biram_report_free`].
 */
enum BiramStatus biram_analyze(const struct BiramBigraph *g, struct BiramReport **out);

/*
 # Safety
 `r` must be a live report handle and `out` a valid pointer to a writable
 [`BiramVerdict`].
 */
enum BiramStatus biram_report_verdict(const struct BiramReport *r, struct BiramVerdict *out);

/*
 Copy the positive adjacency eigenvalues (descending, Perron value first)
 into `buf`. `*len` receives the total count even when `cap` is too small,
 in which case nothing is copied and `BufferTooSmall` is returned.

 # Safety
 `r` must be a live report handle, `len` a valid writable pointer, and `buf`
 valid for `cap` writes of `double` (it may be NULL when `cap` is 0).
 */
enum BiramStatus biram_report_lambdas(const struct BiramReport *r,
                                      double *buf,
                                      size_t cap,
                                      size_t *len);

/*
 Serialize the combined bigraph summary, spectrum and verdict to JSON
 (the CLI `pipeline` document).

 # Safety
 `r` must be a live report handle and `out` a valid pointer to writable
 storage; release the string with [`biram_string_free`].
 */
enum BiramStatus biram_report_to_json(const struct BiramReport *r, char **out);

/*
 Release a report. NULL is ignored.

 # Safety
 `r` must be NULL or a report handle from this library that has not been freed.
 */
void biram_report_free(struct BiramReport *r);

/*
 Release a string returned by this library. NULL is ignored.

 # Safety
 `s` must be NULL or a string returned by this library that has not been freed.
 */
void biram_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BIRAM_H */
