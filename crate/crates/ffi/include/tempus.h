#ifndef TEMPUS_H
#define TEMPUS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum TempusFlowLabel {
  TEMPUS_FLOW_LABEL_RAPID = 0,
  TEMPUS_FLOW_LABEL_BROOK = 1,
  TEMPUS_FLOW_LABEL_INVISIBLE_RAPID = 2,
  TEMPUS_FLOW_LABEL_INVISIBLE_BROOK = 3,
  TEMPUS_FLOW_LABEL_NEUTRAL = 4,
} TempusFlowLabel;

typedef enum TempusStatus {
  TEMPUS_STATUS_OK = 0,
  TEMPUS_STATUS_NULL_POINTER = 1,
  TEMPUS_STATUS_INVALID_ARGUMENT = 2,
  TEMPUS_STATUS_INVALID_GRAPH = 3,
  TEMPUS_STATUS_IO = 4,
  TEMPUS_STATUS_ROUTE_LIMIT = 5,
  TEMPUS_STATUS_OUT_OF_RANGE = 6,
  TEMPUS_STATUS_PANIC = 7,
} TempusStatus;

/**
 * Accumulates nodes and edges until `tempus_builder_build`.
 */
typedef struct TempusBuilder TempusBuilder;

typedef struct TempusGraph TempusGraph;

/**
 * Node scores ordered by rank.
 */
typedef struct TempusScores TempusScores;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next call into this library from the same thread.
 */
const char *tempus_last_error(void);

/**
 * New builder for a graph with lifetime `[start, end]`; null if the
 * interval is empty.
 */
struct TempusBuilder *tempus_builder_new(int64_t start, int64_t end);

/**
 * `actor_type` is `HIA`, `NHIA`, `NHMA`, `OA` or `UNKNOWN`, optionally
 * followed by `:subtype`; null means `UNKNOWN`.
 *
 * # Safety
 * `b` must come from `tempus_builder_new`; strings must be NUL-terminated.
 */
enum TempusStatus tempus_builder_add_node(struct TempusBuilder *b,
                                          const char *id,
                                          const char *actor_type,
                                          int64_t birth);

/**
 * # Safety
 * `b` must come from `tempus_builder_new`; strings must be NUL-terminated.
 */
enum TempusStatus tempus_builder_add_edge(struct TempusBuilder *b,
                                          const char *u,
                                          const char *v,
                                          int64_t birth);

/**
 * Consumes the builder, even on failure. Edges may name nodes that were
 * never added; those nodes are created with the birth of their first edge.
 *
 * # Safety
 * `b` must come from `tempus_builder_new` and not be used afterwards.
 */
enum TempusStatus tempus_builder_build(struct TempusBuilder *b, struct TempusGraph **out);

/**
 * # Safety
 * `b` must be null or come from `tempus_builder_new`.
 */
void tempus_builder_free(struct TempusBuilder *b);

/**
 * Loads CSV files; `nodes_path` may be null. The lifetime is inferred
 * from the data.
 *
 * # Safety
 * Paths must be NUL-terminated; `out` must be writable.
 */
enum TempusStatus tempus_graph_load(const char *nodes_path,
                                    const char *edges_path,
                                    struct TempusGraph **out);

/**
 * # Safety
 * `g` must be a live graph handle; paths must be NUL-terminated.
 */
enum TempusStatus tempus_graph_save(const struct TempusGraph *g,
                                    const char *nodes_path,
                                    const char *edges_path);

/**
 * The default synthetic network for `seed`.
 *
 * # Safety
 * `out` must be writable.
 */
enum TempusStatus tempus_graph_generate(uint64_t seed, struct TempusGraph **out);

/**
 * Zero for a null handle.
 *
 * # Safety
 * `g` must be null or a live graph handle.
 */
uintptr_t tempus_graph_node_count(const struct TempusGraph *g);

/**
 * # Safety
 * `g` must be null or a live graph handle.
 */
uintptr_t tempus_graph_edge_count(const struct TempusGraph *g);

/**
 * # Safety
 * `g` must be null or a graph handle not yet freed.
 */
void tempus_graph_free(struct TempusGraph *g);

/**
 * Static betweenness of the footprint of window `[start, end]`.
 *
 * # Safety
 * `g` must be a live graph handle; `out` must be writable.
 */
enum TempusStatus tempus_static_betweenness(const struct TempusGraph *g,
                                            int64_t start,
                                            int64_t end,
                                            bool adjusted,
                                            struct TempusScores **out);

/**
 * Foremost increasing betweenness over window `[start, end]` with the
 * default route limit.
 *
 * # Safety
 * `g` must be a live graph handle; `out` must be writable.
 */
enum TempusStatus tempus_foremost_betweenness(const struct TempusGraph *g,
                                              int64_t start,
                                              int64_t end,
                                              bool adjusted,
                                              struct TempusScores **out);

/**
 * # Safety
 * `s` must be null or a live score handle.
 */
uintptr_t tempus_scores_len(const struct TempusScores *s);

/**
 * Node id of row `i`, owned by the score table; null when out of range.
 *
 * # Safety
 * `s` must be null or a live score handle.
 */
const char *tempus_scores_node(const struct TempusScores *s, uintptr_t i);

/**
 * Score and 1-based rank of row `i`. Either output may be null.
 *
 * # Safety
 * `s` must be a live score handle; outputs must be null or writable.
 */
enum TempusStatus tempus_scores_get(const struct TempusScores *s,
                                    uintptr_t i,
                                    double *score,
                                    uintptr_t *rank);

/**
 * # Safety
 * `s` must be null or a score handle not yet freed.
 */
void tempus_scores_free(struct TempusScores *s);

/**
 * Label for a temporal/static rank pair with thresholds `top < low`.
 *
 * # Safety
 * `out` must be writable.
 */
enum TempusStatus tempus_classify(uintptr_t temporal_rank,
                                  uintptr_t static_rank,
                                  uintptr_t top,
                                  uintptr_t low,
                                  enum TempusFlowLabel *out);

/**
 * Library version as a static string.
 */
const char *tempus_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TEMPUS_H */
