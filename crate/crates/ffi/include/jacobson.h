#ifndef JACOBSON_H
#define JACOBSON_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Graph serialisation formats.
typedef enum JlabExportFormat {
  JLAB_EXPORT_FORMAT_DOT = 0,
  JLAB_EXPORT_FORMAT_EDGES = 1,
} JlabExportFormat;

// Outcome of a call.
typedef enum JlabStatus {
  JLAB_STATUS_OK = 0,
  JLAB_STATUS_PARSE = 2,
  JLAB_STATUS_INFEASIBLE = 4,
  JLAB_STATUS_SIZE_LIMIT = 5,
  JLAB_STATUS_NULL_ARGUMENT = 10,
  JLAB_STATUS_INVALID_UTF8 = 11,
  JLAB_STATUS_INVALID_ARGUMENT = 12,
  JLAB_STATUS_INTERNAL = 99,
} JlabStatus;

// The Jacobson graph of a ring, with vertices numbered `0..vertex_count`.
typedef struct JlabGraph JlabGraph;

// A finite commutative ring given as a product of local rings.
typedef struct JlabRing JlabRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the most recent failure on this thread, or null if none.
//
// The pointer stays valid until the next failing call on the same thread.
const char *jlab_last_error(void);

// Parses a ring specification such as `"Z4 x GF(9)"`.
//
// # Safety
//
// `spec` must be null or a NUL-terminated string; `out` must be null or
// valid for a pointer write.
enum JlabStatus jlab_ring_parse(const char *spec, struct JlabRing **out);

// Releases a ring. Null is ignored.
//
// # Safety
//
// `ring` must be null or a handle from [`jlab_ring_parse`] not yet freed.
void jlab_ring_free(struct JlabRing *ring);

// Canonical text of a ring; release with [`jlab_string_free`].
//
// # Safety
//
// `ring` must be null or a live ring handle; `out` must be null or valid
// for a pointer write.
enum JlabStatus jlab_ring_format(const struct JlabRing *ring, char **out);

// Order of the ring.
//
// # Safety
//
// `ring` must be null or a live ring handle; `out` must be null or valid
// for a write.
enum JlabStatus jlab_ring_order(const struct JlabRing *ring, uint64_t *out);

// Closed-form classification as a JSON object.
//
// # Safety
//
// `ring` must be null or a live ring handle; `out` must be null or valid
// for a pointer write.
enum JlabStatus jlab_classify(const struct JlabRing *ring, char **out);

// Closed forms checked against the exact oracles, as a JSON report.
// `discrepancy` receives 1 when any flag is set and 0 otherwise.
//
// # Safety
//
// `ring` must be null or a live ring handle; `out` and `discrepancy` must
// be null or valid for writes.
enum JlabStatus jlab_verify(const struct JlabRing *ring,
                            size_t oracle_vertex_limit,
                            uint64_t time_limit_ms,
                            char **out,
                            int32_t *discrepancy);

// A validated Hamiltonian cycle, or path where only a path exists, as a JSON
// construction trace.
//
// # Safety
//
// `ring` must be null or a live ring handle; `out` must be null or valid
// for a pointer write.
enum JlabStatus jlab_construct_hamiltonian(const struct JlabRing *ring, char **out);

// Builds the Jacobson graph, refusing rings with more than `max_vertices`
// vertices. Zero selects the default limit.
//
// # Safety
//
// `ring` must be null or a live ring handle; `out` must be null or valid
// for a pointer write.
enum JlabStatus jlab_graph_build(const struct JlabRing *ring,
                                 uint64_t max_vertices,
                                 struct JlabGraph **out);

// Releases a graph. Null is ignored.
//
// # Safety
//
// `graph` must be null or a handle from [`jlab_graph_build`] not yet freed.
void jlab_graph_free(struct JlabGraph *graph);

// Number of vertices.
//
// # Safety
//
// `graph` must be null or a live graph handle; `out` must be null or valid
// for a write.
enum JlabStatus jlab_graph_vertex_count(const struct JlabGraph *graph, size_t *out);

// Number of edges, counted directly.
//
// # Safety
//
// `graph` must be null or a live graph handle; `out` must be null or valid
// for a write.
enum JlabStatus jlab_graph_edge_count(const struct JlabGraph *graph, size_t *out);

// Degree of vertex `u`.
//
// # Safety
//
// `graph` must be null or a live graph handle; `out` must be null or valid
// for a write.
enum JlabStatus jlab_graph_degree(const struct JlabGraph *graph, size_t u, size_t *out);

// Writes 1 to `out` when vertices `u` and `v` are adjacent and 0 otherwise.
//
// # Safety
//
// `graph` must be null or a live graph handle; `out` must be null or valid
// for a write.
enum JlabStatus jlab_graph_adjacent(const struct JlabGraph *graph,
                                    size_t u,
                                    size_t v,
                                    int32_t *out);

// Copies the coordinates of vertex `u`, one per factor, into `coords`.
// `len` receives the number of factors; nothing is copied when `capacity`
// is smaller than that, and the call reports an invalid argument.
//
// # Safety
//
// `graph` must be null or a live graph handle; `coords` must be null or
// valid for `capacity` writes; `len` must be null or valid for a write.
enum JlabStatus jlab_graph_vertex(const struct JlabGraph *graph,
                                  size_t u,
                                  uint32_t *coords,
                                  size_t capacity,
                                  size_t *len);

// The graph as DOT or as an edge list; `format` is a [`JlabExportFormat`]
// value.
//
// # Safety
//
// `graph` must be null or a live graph handle; `out` must be null or valid
// for a pointer write.
enum JlabStatus jlab_graph_export(const struct JlabGraph *graph, uint32_t format, char **out);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
//
// `s` must be null or a string from this library not yet freed.
void jlab_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* JACOBSON_H */
