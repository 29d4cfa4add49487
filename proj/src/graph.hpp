#ifndef MCQ_GRAPH_HPP
#define MCQ_GRAPH_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "capacity.hpp"
#include "nodeset.hpp"
#include "rng.hpp"

namespace mcq {

using NodeId = int;

struct Edge {
    NodeId u;
    NodeId v;
    Capacity cap;
};

// Undirected connected graph with exact positive integer capacities.
// Normalization merges parallel edges (summing capacities), rejects
// self-loops and non-positive capacities, and orders edges by (min,max)
// endpoint so that input order never affects results.
//
// scale_exponent records the power of n by which original capacities were
// multiplied (0 = unscaled, 10 = perturbed).
class WeightedGraph {
public:
    WeightedGraph(int n, std::vector<Edge> edges, int scale_exponent = 0);

    int node_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int id) const { return edges_[static_cast<std::size_t>(id)]; }
    int scale_exponent() const { return scale_exponent_; }

    Capacity total_capacity() const;
    bool unit_capacity() const;

    // edge ids incident to each node
    const std::vector<std::vector<int>>& incidence() const { return incidence_; }

    // FNV-1a over the canonical serialization; identifies the source graph in
    // tree and data-structure files.
    std::uint64_t content_hash() const;

private:
    int n_;
    std::vector<Edge> edges_;
    int scale_exponent_;
    std::vector<std::vector<int>> incidence_;
};

// One side of a bipartition together with its exact value and the crossing
// edge ids. `side` always contains `designated`.
struct Cut {
    NodeSet side;
    Capacity value;
    std::vector<int> crossing_edges;
    NodeId designated = -1;
};

Capacity cut_value_of_side(const WeightedGraph& g, const NodeSet& side);
std::vector<int> crossing_edges_of_side(const WeightedGraph& g, const NodeSet& side);

// True iff `cut` separates s,t, its stored value matches the recomputed one,
// and its crossing edges are exactly the edges leaving `side`.
bool verify_cut(const WeightedGraph& g, const Cut& cut, NodeId s, NodeId t);

struct ContractionResult {
    WeightedGraph graph;
    // original node id -> contracted node id
    std::vector<NodeId> node_map;
};

// Contracts every part except `keep` to a single node. Nodes of the kept
// part stay singletons and receive ids 0..|keep|-1 in ascending original
// order; the other parts follow in list order. Parallel edges are merged,
// self-loops dropped.
ContractionResult contract_supernodes(const WeightedGraph& g,
                                      const std::vector<std::vector<NodeId>>& parts,
                                      int keep);

// Isolation-style perturbation: every capacity c becomes c*n^10 + r with r
// uniform in [1, n^7], independently per edge, deterministic given the seed.
WeightedGraph perturb(const WeightedGraph& g, std::uint64_t seed);

// Undoes the n^10 scaling of a perturbed cut value (floor division).
Capacity round_back(const Capacity& cap, int n);

} // namespace mcq

#endif
