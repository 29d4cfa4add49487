/* mincutquery: C API for the min-cut query toolkit.
 *
 * All functions return MCQ_OK on success; on failure they return an error
 * code and leave a message retrievable with mcq_last_error() (thread local).
 * Objects are opaque handles released with the matching _free function.
 * Capacities cross the boundary as decimal strings of arbitrary width.
 */
#ifndef MINCUTQUERY_H
#define MINCUTQUERY_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct mcq_graph mcq_graph;
typedef struct mcq_tree mcq_tree;
typedef struct mcq_approx_ds mcq_approx_ds;
typedef struct mcq_query_ds mcq_query_ds;

typedef enum {
    MCQ_OK = 0,
    MCQ_ERR_INVALID_ARGUMENT = 1,
    MCQ_ERR_PARSE = 2,
    MCQ_ERR_DISCONNECTED = 3,
    MCQ_ERR_SCALE = 4,
    MCQ_ERR_BUDGET = 5,
    MCQ_ERR_VALIDATION = 6,
    MCQ_ERR_IO = 7,
    MCQ_ERR_UNSUPPORTED = 8,
    MCQ_ERR_INTERNAL = 9
} mcq_status;

const char* mcq_last_error(void);
void mcq_string_free(char* s);

/* ---- graphs ---------------------------------------------------------- */

/* DIMACS-like text: `p <n> <m>` header then `e <u> <v> <cap>` lines. */
mcq_status mcq_graph_parse(const char* text, mcq_graph** out);
mcq_status mcq_graph_read_file(const char* path, mcq_graph** out);
mcq_status mcq_graph_to_text(const mcq_graph* g, char** out);
mcq_status mcq_graph_write_file(const mcq_graph* g, const char* path);

/* kind: "random" (params: n, param=m, maxcap), "gnp" (param = edge
 * probability in permille on top of a random spanning tree), "star" (n =
 * leaf count), "path", "grid" (n = rows, param = cols), "two-stars" (n,
 * maxcap = star capacity). */
mcq_status mcq_graph_generate(const char* kind, int n, int param, int64_t maxcap,
                              uint64_t seed, mcq_graph** out);

mcq_status mcq_graph_perturb(const mcq_graph* g, uint64_t seed, mcq_graph** out);

int mcq_graph_node_count(const mcq_graph* g);
int mcq_graph_edge_count(const mcq_graph* g);
int mcq_graph_scale_exponent(const mcq_graph* g);

/* JSON matrix of exact all-pairs min-cut values (brute force, n <= 14). */
mcq_status mcq_graph_all_pairs_bruteforce_json(const mcq_graph* g, char** out);

void mcq_graph_free(mcq_graph* g);

/* ---- tree building --------------------------------------------------- */

/* algorithm: "gomory-hu" | "gusfield" | "expansion" | "ultrametric"
 * oracle:    "exact" | "noisy" | "tree"   (noisy uses eps and seed)
 * eps:       rational "p/q" (or "0")
 * fixed_source: nonzero restricts expansion oracles to a fixed source
 * audit_json_out: optional (pass NULL to skip). */
mcq_status mcq_build_tree(const mcq_graph* g, const char* algorithm, const char* oracle,
                          const char* eps, uint64_t seed, int fixed_source,
                          mcq_tree** out, char** audit_json_out);

mcq_status mcq_tree_read_file(const char* path, mcq_tree** out);
mcq_status mcq_tree_to_text(const mcq_tree* t, char** out);
mcq_status mcq_tree_write_file(const mcq_tree* t, const char* path);

int mcq_tree_node_count(const mcq_tree* t);
/* "cut_equivalent" or "flow_equivalent" (static string, do not free) */
const char* mcq_tree_kind(const mcq_tree* t);

/* minimum edge weight on the s-t tree path; decimal string */
mcq_status mcq_tree_query_value(const mcq_tree* t, int s, int t_node, char** out);

/* JSON report; ok=false when violations were found (still MCQ_OK).
 * sample_pairs: 0 = library default (all pairs up to 60 nodes, else a
 * 500-pair sample); UINT64_MAX = force all pairs; otherwise the sample size. */
mcq_status mcq_tree_validate(const mcq_graph* g, const mcq_tree* t, int value_only,
                             uint64_t sample_pairs, uint64_t seed, int* ok_out,
                             char** report_json_out);

void mcq_tree_free(mcq_tree* t);

/* ---- approximate tree-like data structure ---------------------------- */

mcq_status mcq_approx_build(const mcq_graph* g, const char* oracle, const char* eps,
                            uint64_t seed, mcq_approx_ds** out, char** audit_json_out);

mcq_status mcq_approx_save_text(const mcq_approx_ds* ds, char** out);
mcq_status mcq_approx_load_text(const char* text, mcq_approx_ds** out);

/* approximate min-cut value for the pair; decimal string */
mcq_status mcq_approx_query_value(const mcq_approx_ds* ds, int s, int t, char** out);
/* JSON: value, stored-cut index, side, crossing edge ids (needs the graph) */
mcq_status mcq_approx_query_cut_json(const mcq_approx_ds* ds, const mcq_graph* g,
                                     int s, int t, char** out);

/* maximum spanning tree over all-pairs DS values ((1+eps)^2 route) */
mcq_status mcq_approx_tree_complete(const mcq_approx_ds* ds, mcq_tree** out);
/* maximum spanning tree of the flow emulator ((1+eps)^3 route) */
mcq_status mcq_approx_tree_emulator(const mcq_approx_ds* ds, mcq_tree** out);

void mcq_approx_free(mcq_approx_ds* ds);

/* ---- output-sensitive min-cut-edge queries ---------------------------- */

mcq_status mcq_query_ds_build(const mcq_graph* g, const mcq_tree* t, mcq_query_ds** out);

/* JSON: {"s","t","value","edge_ids","visited_nodes"} */
mcq_status mcq_query_ds_report_json(const mcq_query_ds* q, int s, int t, char** out);

void mcq_query_ds_free(mcq_query_ds* q);

#ifdef __cplusplus
}
#endif

#endif /* MINCUTQUERY_H */
