#ifndef MCQ_MAXFLOW_HPP
#define MCQ_MAXFLOW_HPP

#include <vector>

#include "graph.hpp"

namespace mcq {

// Exact Dinic max-flow on an undirected graph, deterministic for a fixed
// input. The returned min cut is canonicalized as the minimal t-side: the
// set of nodes that can still reach t in the residual graph. That set is
// contained in the t-side of every minimum st-cut, so the answer does not
// depend on augmenting order.
class MaxFlowSolver {
public:
    explicit MaxFlowSolver(const WeightedGraph& g);

    Capacity max_flow_value(NodeId s, NodeId t);
    Cut min_cut(NodeId s, NodeId t); // side = canonical t-side, designated = t

private:
    struct Arc {
        int to;
        Capacity residual;
        int edge_id; // original undirected edge, -1 for none
    };

    Capacity run_flow(NodeId s, NodeId t);
    bool bfs_levels(NodeId s, NodeId t);
    Capacity dfs_push(NodeId v, NodeId t, Capacity limit);

    const WeightedGraph* g_;
    int n_;
    Capacity inf_; // total capacity + 1, cached
    std::vector<Arc> arcs_; // paired: arc i and i^1 are reverses
    std::vector<std::vector<int>> adj_;
    std::vector<int> level_;
    std::vector<int> iter_;
    std::vector<int> bfs_queue_;
};

// Convenience wrapper constructing a solver per call.
Cut max_flow_min_cut(const WeightedGraph& g, NodeId s, NodeId t);

// Independent oracle: minimum over all bipartitions separating s from t,
// tie-broken by the lexicographically smallest t-side bitmask. Guarded to
// n <= 20.
Cut brute_force_min_cut(const WeightedGraph& g, NodeId s, NodeId t);

// Symmetric matrix of brute-force min-cut values; zero diagonal. n <= 14.
std::vector<std::vector<Capacity>> all_pairs_min_cut_bruteforce(const WeightedGraph& g);

} // namespace mcq

#endif
