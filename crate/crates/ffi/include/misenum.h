#ifndef MISENUM_H
#define MISENUM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MisStatus {
  MIS_STATUS_OK = 0,
  MIS_STATUS_NULL_POINTER = 1,
  MIS_STATUS_INVALID_ARGUMENT = 2,
  MIS_STATUS_PARSE = 3,
  MIS_STATUS_ALREADY_MEMBER = 4,
  MIS_STATUS_NOT_MEMBER = 5,
  MIS_STATUS_TOO_LARGE = 6,
  MIS_STATUS_INTERNAL = 7,
} MisStatus;

typedef enum MisFormat {
  MIS_FORMAT_EDGE_LIST = 0,
  MIS_FORMAT_DIMACS = 1,
} MisFormat;

typedef enum MisAlgorithm {
  MIS_ALGORITHM_AUTO = 0,
  MIS_ALGORITHM_GENERIC_MINOR = 1,
  MIS_ALGORITHM_GENERIC_SPARSE = 2,
  MIS_ALGORITHM_BOUNDED = 3,
  MIS_ALGORITHM_BRUTE = 4,
} MisAlgorithm;

typedef enum MisOrder {
  MIS_ORDER_DEGENERACY = 0,
  MIS_ORDER_INPUT = 1,
} MisOrder;

typedef enum MisStructure {
  MIS_STRUCTURE_MINOR = 0,
  MIS_STRUCTURE_SPARSE = 1,
} MisStructure;

/*
 A dynamic set with an undominated-vertex count.
 */
typedef struct MisDominance MisDominance;

/*
 An undirected simple graph.
 */
typedef struct MisGraph MisGraph;

/*
 A dynamic set with an independence test.
 */
typedef struct MisIndependence MisIndependence;

/*
 Receives one maximal independent set as an ascending vertex array that
 is only valid during the call. A nonzero return stops the enumeration.
 */
typedef int32_t (*MisSetCallback)(const uint32_t *members, size_t len, void *user_data);

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Static description of `status`.
 */
const char *mis_status_str(enum MisStatus status);

/*
 Builds a graph on `n` vertices from `edge_count` pairs stored flat in
 `edges` (`2 * edge_count` entries). Duplicates are merged.

 # Safety
 `edges` must point to `2 * edge_count` readable `u32`s (or be null when
 `edge_count == 0`); `out` must be writable.
 */
enum MisStatus mis_graph_from_edges(size_t n,
                                    const uint32_t *edges,
                                    size_t edge_count,
                                    struct MisGraph **out);

/*
 Parses a NUL-terminated edge-list or DIMACS text.

 # Safety
 `text` must be a valid NUL-terminated string; `out` must be writable.
 */
enum MisStatus mis_graph_parse(const char *text, enum MisFormat format, struct MisGraph **out);

/*
 # Safety
 `graph` must be null or a handle from this library not yet freed.
 */
void mis_graph_free(struct MisGraph *graph);

/*
 Vertex count, or 0 for a null handle.

 # Safety
 `graph` must be null or a live handle.
 */
size_t mis_graph_vertex_count(const struct MisGraph *graph);

/*
 Edge count, or 0 for a null handle.

 # Safety
 `graph` must be null or a live handle.
 */
size_t mis_graph_edge_count(const struct MisGraph *graph);

/*
 Degeneracy of the graph, or 0 for a null handle.

 # Safety
 `graph` must be null or a live handle.
 */
size_t mis_graph_degeneracy(const struct MisGraph *graph);

/*
 Enumerates every maximal independent set of `graph`, calling `callback`
 (which may be null) for each. `delta` of 0 selects the default
 threshold. The number of sets passed on is stored in `count` if it is
 not null.

 # Safety
 `graph` must be a live handle; `count` must be null or writable;
 `callback` must be safe to call with `user_data`.
 */
enum MisStatus mis_enumerate(const struct MisGraph *graph,
                             enum MisAlgorithm algorithm,
                             enum MisOrder order,
                             size_t delta,
                             MisSetCallback callback,
                             void *user_data,
                             uint64_t *count);

/*
 Creates an empty dominance structure over `graph`. `delta` of 0 selects
 the default threshold; the minor structure needs `delta >= 2`.

 # Safety
 `graph` must be a live handle; `out` must be writable.
 */
enum MisStatus mis_dominance_new(const struct MisGraph *graph,
                                 enum MisStructure structure,
                                 size_t delta,
                                 struct MisDominance **out);

/*
 # Safety
 `dom` must be a live handle.
 */
enum MisStatus mis_dominance_insert(struct MisDominance *dom, uint32_t v);

/*
 # Safety
 `dom` must be a live handle.
 */
enum MisStatus mis_dominance_delete(struct MisDominance *dom, uint32_t v);

/*
 Stores the number of vertices neither in the set nor adjacent to it.

 # Safety
 `dom` must be a live handle; `out` must be writable.
 */
enum MisStatus mis_dominance_undominated(const struct MisDominance *dom, size_t *out);

/*
 # Safety
 `dom` must be null or a live handle.
 */
void mis_dominance_free(struct MisDominance *dom);

/*
 Creates an empty independence tester over `graph`.

 # Safety
 `graph` must be a live handle; `out` must be writable.
 */
enum MisStatus mis_independence_new(const struct MisGraph *graph, struct MisIndependence **out);

/*
 # Safety
 `ind` must be a live handle.
 */
enum MisStatus mis_independence_insert(struct MisIndependence *ind, uint32_t v);

/*
 # Safety
 `ind` must be a live handle.
 */
enum MisStatus mis_independence_delete(struct MisIndependence *ind, uint32_t v);

/*
 Stores whether the current set is independent.

 # Safety
 `ind` must be a live handle; `out` must be writable.
 */
enum MisStatus mis_independence_is_independent(const struct MisIndependence *ind, bool *out);

/*
 # Safety
 `ind` must be null or a live handle.
 */
void mis_independence_free(struct MisIndependence *ind);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MISENUM_H */
