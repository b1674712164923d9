#ifndef TRIDUAL_H
#define TRIDUAL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TdStatus {
  TD_STATUS_OK = 0,
  TD_STATUS_NULL_POINTER = 1,
  TD_STATUS_INVALID_UTF8 = 2,
  TD_STATUS_PARSE = 3,
  TD_STATUS_INVALID_INPUT = 4,
  TD_STATUS_NOT_PLANAR = 5,
  TD_STATUS_CAP_EXCEEDED = 6,
  TD_STATUS_INTERNAL = 7,
} TdStatus;

typedef enum TdVerdict {
  TD_VERDICT_YES_WITHOUT_INTERIOR_POINTS = 0,
  TD_VERDICT_YES_WITH_INTERIOR_POINTS = 1,
  TD_VERDICT_NO = 2,
} TdVerdict;

/**
 * Opaque recognition result.
 */
typedef struct TdDecision TdDecision;

/**
 * Opaque graph handle.
 */
typedef struct TdGraph TdGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *td_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *td_version(void);

/**
 * Parses a graph in edge-list form, or an embedding with rotation lines.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum TdStatus td_graph_parse(const char *text, struct TdGraph **out);

/**
 * # Safety
 * `g` must come from [`td_graph_parse`] and not be freed twice.
 */
void td_graph_free(struct TdGraph *g);

/**
 * # Safety
 * `g` must be a live handle or null.
 */
size_t td_graph_vertex_count(const struct TdGraph *g);

/**
 * # Safety
 * `g` must be a live handle or null.
 */
size_t td_graph_edge_count(const struct TdGraph *g);

/**
 * Recognition without holes. A "no" answer is a successful call.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum TdStatus td_recognize_no_holes(const struct TdGraph *g,
                                    bool require_empty_interior,
                                    struct TdDecision **out);

/**
 * Recognition with a hole assignment given as `vertex : v1 v2 ... vk`
 * lines against the graph's embedding.
 *
 * # Safety
 * `g` must be a live handle, `assignment` a NUL-terminated string and
 * `out` a valid pointer.
 */
enum TdStatus td_recognize_known_holes(const struct TdGraph *g,
                                       const char *assignment,
                                       bool require_empty_interior,
                                       struct TdDecision **out);

/**
 * Exhaustive search over hole assignments. Accepts gadget-graph files with
 * a `tags` section as well as plain graphs and embeddings. On success
 * `found` tells whether some assignment is accepted and `k` receives the
 * number of degree-2 vertices.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `found` and `k` valid pointers.
 */
enum TdStatus td_solve_unknown_holes(const char *text, size_t cap, bool *found, size_t *k);

/**
 * # Safety
 * `d` must be a live handle.
 */
enum TdVerdict td_decision_verdict(const struct TdDecision *d);

/**
 * Reason for a "no" verdict, or null for "yes". Free with
 * [`td_string_free`].
 *
 * # Safety
 * `d` must be a live handle.
 */
char *td_decision_reason(const struct TdDecision *d);

/**
 * Witness triangulation in the text format, or null for "no". Free with
 * [`td_string_free`].
 *
 * # Safety
 * `d` must be a live handle.
 */
char *td_decision_witness(const struct TdDecision *d);

/**
 * # Safety
 * `d` must come from a `td_recognize_*` call and not be freed twice.
 */
void td_decision_free(struct TdDecision *d);

/**
 * # Safety
 * `s` must be a string returned by this library, or null.
 */
void td_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRIDUAL_H */
