#ifndef MCQ_EXPANSION_HPP
#define MCQ_EXPANSION_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "cut_tree.hpp"
#include "gomory_hu.hpp"
#include "graph.hpp"
#include "oracle.hpp"
#include "rng.hpp"

namespace mcq {

// Capacitated auxiliary graph of one super-node: the usual Gomory-Hu
// auxiliary graph with parallel edges merged. Core nodes are the super-node's
// own nodes; each tree neighbor appears as one contracted boundary node.
struct Cag {
    WeightedGraph graph;
    int supernode_id = -1;
    std::vector<NodeId> core_original;   // original ids, ascending
    std::vector<NodeId> node_map;        // original id -> CAG id (core rows valid)
    NodeSet core_mask;                   // over CAG ids
    std::vector<std::pair<int, NodeId>> boundary; // (tree neighbor super id, CAG id)
};

struct ExpansionOptions {
    bool fixed_source = false;   // wrap per-(CAG,pivot) oracles in fixed_source_view
    int pivot_budget_factor = 40; // retries allowed: factor * log2(n)
    int restart_budget = 10;     // perturbation restarts
};

struct PivotSelection {
    NodeId pivot_cag = -1;       // CAG id of the chosen pivot
    NodeSet candidates;          // V_i^{<=1/2}(p) over CAG ids
    int retries = 0;
    std::uint64_t value_queries = 0;
};

// h_p(u) = |S'_u| for every core node u != p, computed from value queries
// only: capacities are scaled by n_c^3 and unit edges connect p to every
// other core node, so the scaled flow difference counts the core nodes on
// u's side of its unique minimum cut. Value queries are assumed available
// from the oracle; the variant that avoids them by probing random batches
// of candidate sinks with cut queries alone is out of scope here.
std::vector<std::int64_t> compute_h_values(const Cag& cag, NodeId p_cag,
                                           const OracleFactory& factory,
                                           bool fixed_source,
                                           std::uint64_t* value_queries = nullptr);

// Random pivots until |V_i^{<=1/2}(p)| >= n_i / 4.
PivotSelection select_pivot(const Cag& cag, const OracleFactory& factory,
                            RngStream& rng, const ExpansionOptions& opts);

struct ExpansionOutcome {
    NodeId pivot_original = -1;
    int pivot_retries = 0;
    std::vector<NodeId> center_nodes;            // U_p at termination, original ids
    std::vector<std::vector<NodeId>> parts;      // original ids, pick order
    std::vector<Capacity> part_weights;          // oracle value of the (u_j, p) query
    std::vector<NodeId> part_picks;              // u_j, original ids
    // tree neighbor super id -> part index (entries only for neighbors that move)
    std::map<int, int> neighbor_rewiring;
    // part index -> parent part index (-1 = expansion center): parts can be
    // peeled off a previously split part, forming the tree topology
    std::vector<int> part_parent;
    std::uint64_t cut_queries = 0;
    std::uint64_t value_queries = 0;
};

// One batched expansion step: pivot selection, then repeated splits of the
// expansion center along oracle cuts until |U_p| <= 7 n_i / 8.
ExpansionOutcome expand_supernode(const Cag& cag, const OracleFactory& factory,
                                  RngStream& rng, const ExpansionOptions& opts);

// Per-depth audit of the CAG size bound 2n + 3m.
struct CagSizeReport {
    int depth = 0;
    int cag_count = 0;
    std::int64_t total_nodes = 0;
    std::int64_t total_edges = 0;
    std::int64_t bound_2n_3m = 0;
    bool within_bound = true;
};

CagSizeReport audit_cag_sizes(const std::vector<Cag>& cags, const WeightedGraph& g, int depth);

struct DepthAudit {
    CagSizeReport sizes;
    int pivot_retries = 0;
    std::uint64_t cut_queries = 0;
    std::uint64_t value_queries = 0;
};

struct ExpansionAudit {
    std::vector<DepthAudit> depths;
    int restarts = 0;
    int recursion_depth = 0;
};

// CAG of one super-node against the current tree components.
Cag build_cag(const WeightedGraph& g, const PartitionTree& pt, int supernode);

// Builds the CAG of every non-singleton super-node at the current depth.
std::vector<Cag> build_child_cags(const WeightedGraph& g, const PartitionTree& pt);

// Full build. Unscaled inputs are perturbed internally and the final weights
// rounded back; already-perturbed inputs (scale_exponent == 10) are used as
// given, weights stay at the input scale, and a crossing cut is a hard error
// since re-perturbation is not possible.
CutTree build_via_expansion(const WeightedGraph& g, const OracleFactory& factory,
                            std::uint64_t seed, const ExpansionOptions& opts = {},
                            ExpansionAudit* audit = nullptr);

} // namespace mcq

#endif
