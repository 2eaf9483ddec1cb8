#ifndef ALPHADIM_H
#define ALPHADIM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AdStatus {
  AD_STATUS_OK = 0,
  AD_STATUS_NULL_POINTER = 1,
  AD_STATUS_INVALID_ARGUMENT = 2,
  AD_STATUS_PARSE = 3,
  AD_STATUS_SIZE_LIMIT = 4,
  AD_STATUS_DISCONNECTED = 5,
  AD_STATUS_NUMERIC = 6,
  AD_STATUS_IO = 7,
  AD_STATUS_PANIC = 8,
} AdStatus;

typedef struct AdEmbedding AdEmbedding;

typedef struct AdGraph AdGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread; empty if none. The pointer
// stays valid until the next failing call on the same thread.
const char *ad_last_error(void);

// # Safety
// `s` must come from this library and not have been freed.
void ad_string_free(char *s);

// Edgeless graph on `n` vertices.
//
// # Safety
// `out` must be valid for writes.
enum AdStatus ad_graph_new(size_t n, struct AdGraph **out);

// # Safety
// `edge_list` must be a NUL-terminated string and `out` valid for writes.
enum AdStatus ad_graph_parse(const char *edge_list, struct AdGraph **out);

// Erdős–Rényi sample.
//
// # Safety
// `out` must be valid for writes.
enum AdStatus ad_graph_gnp(size_t n, double p, uint64_t seed, struct AdGraph **out);

// # Safety
// `g` must be a live graph handle.
enum AdStatus ad_graph_add_edge(struct AdGraph *g, size_t u, size_t v);

// Vertex count; 0 for a null handle.
//
// # Safety
// `g` must be null or a live graph handle.
size_t ad_graph_vertex_count(const struct AdGraph *g);

// # Safety
// `g` must be null or a handle from this library, not yet freed.
void ad_graph_free(struct AdGraph *g);

// Size of a minimum (`exact`) or greedy clique partition.
//
// # Safety
// `g` must be a live graph handle and `out` valid for writes.
enum AdStatus ad_clique_partition_size(const struct AdGraph *g, bool exact, size_t *out);

// Build an embedding. `construction` is one of `spm`, `collapse`, `prop6`,
// `frechet`, `frechet-q`, `schoenberg`, `simplex-jl`.
//
// # Safety
// `g` must be a live graph handle, `construction` a NUL-terminated string
// and `out` valid for writes.
enum AdStatus ad_embed(const struct AdGraph *g,
                       const char *construction,
                       double alpha,
                       uint64_t seed,
                       struct AdEmbedding **out);

// Check α-preservation of `g` by `e`; `pass` and `alpha_max` may be null.
//
// # Safety
// Handles must be live; non-null output pointers must be valid for writes.
enum AdStatus ad_embedding_check(const struct AdEmbedding *e,
                                 const struct AdGraph *g,
                                 double alpha,
                                 bool *pass,
                                 double *alpha_max);

// Doubling dimension of the embedded point set or metric.
//
// # Safety
// `e` must be a live embedding handle and `out` valid for writes.
enum AdStatus ad_embedding_doubling(const struct AdEmbedding *e, bool exact, uint32_t *out);

// JSON form of the embedding; free with [`ad_string_free`].
//
// # Safety
// `e` must be a live embedding handle and `out` valid for writes.
enum AdStatus ad_embedding_to_json(const struct AdEmbedding *e, char **out);

// # Safety
// `e` must be null or a handle from this library, not yet freed.
void ad_embedding_free(struct AdEmbedding *e);

// Bound report at α as JSON; free with [`ad_string_free`].
//
// # Safety
// `g` must be a live graph handle and `out` valid for writes.
enum AdStatus ad_analyze(const struct AdGraph *g, double alpha, uint64_t seed, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ALPHADIM_H */
