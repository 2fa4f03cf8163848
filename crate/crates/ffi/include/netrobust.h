#ifndef NETROBUST_H
#define NETROBUST_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NrStatus {
  NR_STATUS_OK = 0,
  NR_STATUS_NULL_POINTER = 1,
  NR_STATUS_INVALID_ARGUMENT = 2,
  NR_STATUS_OUT_OF_RANGE = 3,
  NR_STATUS_BUFFER_TOO_SMALL = 4,
  NR_STATUS_IO = 5,
  NR_STATUS_PARSE = 6,
  NR_STATUS_SAMPLING_STALLED = 7,
  NR_STATUS_PANIC = 99,
} NrStatus;

typedef enum NrTopology {
  NR_TOPOLOGY_ERDOS_RENYI = 0,
  NR_TOPOLOGY_Q_SNAPBACK = 1,
  NR_TOPOLOGY_SMALL_WORLD = 2,
  NR_TOPOLOGY_SCALE_FREE = 3,
} NrTopology;

typedef enum NrStrategy {
  NR_STRATEGY_RANDOM = 0,
  NR_STRATEGY_BETWEENNESS = 1,
  NR_STRATEGY_DEGREE = 2,
} NrStrategy;

typedef enum NrMode {
  NR_MODE_ADAPTIVE = 0,
  NR_MODE_STATIC = 1,
} NrMode;

typedef enum NrCurveKind {
  NR_CURVE_KIND_CONNECTIVITY = 0,
  NR_CURVE_KIND_CONTROLLABILITY = 1,
} NrCurveKind;

typedef enum NrMaskKind {
  NR_MASK_KIND_NULL = 0,
  NR_MASK_KIND_CONFUSION = 1,
} NrMaskKind;

typedef enum NrAlternative {
  /**
   * Second sample stochastically greater than the first.
   */
  NR_ALTERNATIVE_GREATER = 0,
  NR_ALTERNATIVE_TWO_SIDED = 1,
} NrAlternative;

/**
 * Opaque directed graph.
 */
typedef struct NrGraph NrGraph;

typedef struct NrMannWhitney {
  double u_x;
  double u_y;
  double p_value;
  bool exact;
  bool degenerate;
} NrMannWhitney;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null if none.
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *nr_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *nr_version(void);

/**
 * Builds a graph on `n` nodes from `m` edges given as `2 * m` node ids
 * (`u0, v0, u1, v1, ...`). Duplicate edges are merged.
 *
 * # Safety
 * `edges` must point to `2 * m` readable values (it may be null when `m` is
 * 0) and `out` must be writable.
 */
enum NrStatus nr_graph_from_edges(size_t n, const uint32_t *edges, size_t m, struct NrGraph **out);

/**
 * Generates a network with `round(k_avg * n)` edges.
 *
 * # Safety
 * `out` must be writable.
 */
enum NrStatus nr_graph_generate(enum NrTopology topology,
                                size_t n,
                                double k_avg,
                                uint64_t seed,
                                struct NrGraph **out);

/**
 * Reads an RNET-EDGES file.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` writable.
 */
enum NrStatus nr_graph_read(const char *path, struct NrGraph **out);

/**
 * Writes `g` as an RNET-EDGES file.
 *
 * # Safety
 * `g` must be a live handle and `path` a NUL-terminated string.
 */
enum NrStatus nr_graph_write(const struct NrGraph *g, const char *path);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `g` must be null or a handle not yet freed.
 */
void nr_graph_free(struct NrGraph *g);

/**
 * Independent copy of `g`, including removed-node state.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum NrStatus nr_graph_clone(const struct NrGraph *g, struct NrGraph **out);

/**
 * Total node count, including removed nodes. 0 for null.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t nr_graph_node_count(const struct NrGraph *g);

/**
 * Nodes not yet removed. 0 for null.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t nr_graph_active_count(const struct NrGraph *g);

/**
 * Edges between active nodes. 0 for null.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t nr_graph_edge_count(const struct NrGraph *g);

/**
 * Removes node `v` and its incident edges.
 *
 * # Safety
 * `g` must be a live handle.
 */
enum NrStatus nr_graph_remove_node(struct NrGraph *g, size_t v);

/**
 * Size of the largest weakly connected component.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum NrStatus nr_graph_weak_lcc(const struct NrGraph *g, size_t *out);

/**
 * Minimum number of driver nodes, `max(1, active - maximum matching)`.
 *
 * # Safety
 * `g` must be a live handle and `out` writable.
 */
enum NrStatus nr_graph_min_driver_nodes(const struct NrGraph *g, size_t *out);

/**
 * Raw betweenness per node id into `out[0..node_count]`.
 *
 * # Safety
 * `g` must be a live handle and `out` must hold `len` values.
 */
enum NrStatus nr_graph_betweenness(const struct NrGraph *g, double *out, size_t len);

/**
 * Row-major `n x n` adjacency image into `out`.
 *
 * # Safety
 * `g` must be a live handle and `out` must hold `len` values.
 */
enum NrStatus nr_graph_adjacency_image(const struct NrGraph *g, float *out, size_t len);

/**
 * Full removal attack on an intact graph. Writes `node_count` curve values
 * to `curve` and, when `order` is non-null, the removal order to `order`.
 * `seed` only matters for random attacks.
 *
 * # Safety
 * `g` must be a live handle; `curve` (and `order`, if non-null) must hold
 * `len` values.
 */
enum NrStatus nr_simulate_attack(const struct NrGraph *g,
                                 enum NrStrategy strategy,
                                 enum NrMode mode,
                                 enum NrCurveKind kind,
                                 uint64_t seed,
                                 size_t recompute_every,
                                 double *curve,
                                 size_t *order,
                                 size_t len);

/**
 * Masks an `n x n` row-major image in place. `row` and `col` are the
 * 1-based upper-left corner of the `size x size` square.
 *
 * # Safety
 * `pixels` must hold `n * n` values in `[0, 1]`.
 */
enum NrStatus nr_apply_mask(float *pixels,
                            size_t n,
                            enum NrMaskKind kind,
                            size_t size,
                            size_t row,
                            size_t col);

/**
 * Fraction of an `n x n` image hidden by an `s x s` mask.
 */
double nr_pixel_loss_ratio(size_t n, size_t s);

/**
 * Mann-Whitney U test of `x` against `y`.
 *
 * # Safety
 * `x` and `y` must hold `nx` and `ny` values; `out` must be writable.
 */
enum NrStatus nr_mann_whitney(const double *x,
                              size_t nx,
                              const double *y,
                              size_t ny,
                              enum NrAlternative alternative,
                              struct NrMannWhitney *out);

/**
 * Per-job seed derived from a master seed and an index path.
 *
 * # Safety
 * `indices` must hold `len` values (it may be null when `len` is 0).
 */
uint64_t nr_derive_seed(uint64_t master, const uint64_t *indices, size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NETROBUST_H */
