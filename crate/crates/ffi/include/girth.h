#ifndef GIRTH_H
#define GIRTH_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

#define GIRTH_OK 0

#define GIRTH_NULL_POINTER 1

#define GIRTH_INVALID_ARGUMENT 2

#define GIRTH_PARSE_ERROR 3

#define GIRTH_VERTEX_OUT_OF_RANGE 4

#define GIRTH_UNSUPPORTED_GRAPH 5

#define GIRTH_BOUND_VIOLATION 6

#define GIRTH_IO_ERROR 7

#define GIRTH_PANIC 8

/**
 * Stands in for an infinite distance or a missing cycle.
 */
#define GIRTH_INF UINT64_MAX

/**
 * One value per vertex or per query pair.
 */
typedef struct GirthEstimates GirthEstimates;

/**
 * Immutable weighted graph.
 */
typedef struct GirthGraph GirthGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code.
 */
const char *girth_status_message(int32_t status);

/**
 * Builds a graph from `m` edges `(us[i], vs[i], ws[i])`.
 *
 * # Safety
 * `us`, `vs` and `ws` must each point to `m` readable values; `out` must be
 * writable.
 */
int32_t girth_graph_new(size_t n,
                        bool directed,
                        const size_t *us,
                        const size_t *vs,
                        const uint64_t *ws,
                        size_t m,
                        struct GirthGraph **out);

/**
 * Parses the edge-list text format.
 *
 * # Safety
 * `source` must be a NUL-terminated string; `out` must be writable.
 */
int32_t girth_graph_parse(const char *source, struct GirthGraph **out);

/**
 * # Safety
 * `g` must come from this library and not be used afterwards; null is ignored.
 */
void girth_graph_free(struct GirthGraph *g);

/**
 * Vertex count, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live graph handle.
 */
size_t girth_graph_vertex_count(const struct GirthGraph *g);

/**
 * Edge count, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live graph handle.
 */
size_t girth_graph_edge_count(const struct GirthGraph *g);

/**
 * Shortest-cycle estimate for every vertex with the algorithm named `algo`
 * (`"exact"`, `"2approx"`, `"k-approx"`, ...). With `check_bounds` set, the
 * exact oracle also runs and a violated guarantee yields
 * `GIRTH_BOUND_VIOLATION`.
 *
 * # Safety
 * `g` must be a live graph handle, `algo` a NUL-terminated string and `out`
 * writable.
 */
int32_t girth_ansc(const struct GirthGraph *g,
                   const char *algo,
                   size_t k,
                   double eps,
                   uint64_t seed,
                   bool check_bounds,
                   struct GirthEstimates **out);

/**
 * Distance estimates for `count` pairs `(sources[i], targets[i])` with the
 * algorithm named `algo` (`"npsp-exact"`, `"tz"`, `"spanner-tz"`,
 * `"npsp-2eps"`). For `"st"` the two arrays are read as the source set and
 * the target set, and the output lists every pair of `S × T` row by row.
 *
 * # Safety
 * `sources` and `targets` must each point to `count` readable values; other
 * pointers as for [`girth_ansc`].
 */
int32_t girth_npsp(const struct GirthGraph *g,
                   const char *algo,
                   const size_t *sources,
                   const size_t *targets,
                   size_t count,
                   size_t k,
                   double eps,
                   uint64_t seed,
                   bool check_bounds,
                   struct GirthEstimates **out);

/**
 * # Safety
 * `e` must be null or a live estimates handle.
 */
size_t girth_estimates_len(const struct GirthEstimates *e);

/**
 * Work counter of the run that produced `e`: arcs scanned plus, for
 * oracle queries, bunch entries compared.
 *
 * # Safety
 * `e` must be null or a live estimates handle.
 */
uint64_t girth_estimates_work(const struct GirthEstimates *e);

/**
 * Copies up to `len` values into `buf`; `GIRTH_INF` marks infinity.
 *
 * # Safety
 * `e` must be a live estimates handle and `buf` writable for `len` values.
 */
int32_t girth_estimates_copy(const struct GirthEstimates *e, uint64_t *buf, size_t len);

/**
 * # Safety
 * `e` must come from this library and not be used afterwards; null is ignored.
 */
void girth_estimates_free(struct GirthEstimates *e);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GIRTH_H */
