#ifndef HITLAB_H
#define HITLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  HITLAB_EXACT_METHOD_ORACLE = 0,
  HITLAB_EXACT_METHOD_SPANNING = 1,
  HITLAB_EXACT_METHOD_RZ = 2,
  HITLAB_EXACT_METHOD_TETALI = 3,
} HitlabExactMethod;

typedef enum {
  HITLAB_FLOAT_METHOD_SPECTRAL = 0,
  HITLAB_FLOAT_METHOD_GREEN = 1,
} HitlabFloatMethod;

/**
 * Result of every fallible call.
 */
typedef enum {
  HITLAB_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  HITLAB_STATUS_NULL_POINTER = 1,
  /**
   * Bad vertex index, method, parameter or non-UTF-8 string.
   */
  HITLAB_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The edge list or family spec did not parse.
   */
  HITLAB_STATUS_PARSE = 3,
  /**
   * The graph is unsuitable, e.g. disconnected.
   */
  HITLAB_STATUS_GRAPH = 4,
  /**
   * The graph is too large for the path-enumerating methods.
   */
  HITLAB_STATUS_SIZE_CAP_EXCEEDED = 5,
  /**
   * A numerical routine failed.
   */
  HITLAB_STATUS_NUMERIC = 6,
  /**
   * `hitlab_verify_json` ran and at least one check failed.
   */
  HITLAB_STATUS_VERIFY_FAILED = 7,
  /**
   * A Rust panic was caught at the boundary.
   */
  HITLAB_STATUS_PANIC = 8,
} HitlabStatus;

/**
 * Opaque graph handle.
 */
typedef struct HitlabGraph HitlabGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a graph on `n` vertices from `m` edges stored as `2 * m`
 * consecutive vertex indices.
 *
 * # Safety
 * `edges` must point to `2 * m` readable `size_t` values (it may be null
 * when `m == 0`); `out` must be writable.
 */
HitlabStatus hitlab_graph_from_edges(size_t n, const size_t *edges, size_t m, HitlabGraph **out);

/**
 * Builds a graph from a family spec such as `"lollipop:5,5"` or
 * `"random:n=8,seed=42"`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string; `out` must be writable.
 */
HitlabStatus hitlab_graph_from_family(const char *spec, HitlabGraph **out);

/**
 * Parses an edge list: a header line `n m`, then `m` lines `u v`; `#`
 * starts a comment.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
HitlabStatus hitlab_graph_parse(const char *text, HitlabGraph **out);

/**
 * Releases a graph. Null is ignored.
 *
 * # Safety
 * `g` must be null or a handle not yet freed.
 */
void hitlab_graph_free(HitlabGraph *g);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t hitlab_graph_vertex_count(const HitlabGraph *g);

/**
 * Number of edges, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t hitlab_graph_edge_count(const HitlabGraph *g);

/**
 * Exact `H(x, y)` as a `"num/den"` string. `method` is one of the
 * `HitlabExactMethod` values; `cap` bounds the vertex count for the
 * path-enumerating methods, 0 selecting the default.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
HitlabStatus hitlab_hit_exact(const HitlabGraph *g,
                              size_t x,
                              size_t y,
                              uint32_t method,
                              size_t cap,
                              char **out);

/**
 * Floating-point `H(x, y)`; `method` is one of the `HitlabFloatMethod`
 * values.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
HitlabStatus hitlab_hit_float(const HitlabGraph *g,
                              size_t x,
                              size_t y,
                              uint32_t method,
                              double *out);

/**
 * Number of spanning trees, as a decimal string.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
HitlabStatus hitlab_tau(const HitlabGraph *g, char **out);

/**
 * Effective resistance between `x` and `y` as `"num/den"`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
HitlabStatus hitlab_resistance(const HitlabGraph *g, size_t x, size_t y, char **out);

/**
 * Commute time `H(x, y) + H(y, x)` as `"num/den"`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
HitlabStatus hitlab_commute(const HitlabGraph *g, size_t x, size_t y, char **out);

/**
 * Monte Carlo estimate of `H(x, y)` from `walks` seeded walks. Either
 * out-pointer may be null if that value is not wanted.
 *
 * # Safety
 * `g` must be a live handle; non-null out-pointers must be writable.
 */
HitlabStatus hitlab_hit_montecarlo(const HitlabGraph *g,
                                   size_t x,
                                   size_t y,
                                   uint64_t walks,
                                   uint64_t seed,
                                   double *out_mean,
                                   double *out_stderr);

/**
 * Runs the full verification sweep and returns the JSON report. The
 * report is written even when a check fails, in which case the status is
 * `HITLAB_STATUS_VERIFY_FAILED`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
HitlabStatus hitlab_verify_json(const HitlabGraph *g, size_t cap, char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void hitlab_string_free(char *s);

/**
 * Message for the most recent failed call on this thread, or null after a
 * successful call. Valid until the next call on the same thread.
 */
const char *hitlab_last_error(void);

/**
 * Library version, a static string.
 */
const char *hitlab_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HITLAB_H */
