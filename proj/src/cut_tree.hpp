#ifndef MCQ_CUT_TREE_HPP
#define MCQ_CUT_TREE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "graph.hpp"
#include "oracle.hpp"

namespace mcq {

enum class TreeKind { cut_equivalent, flow_equivalent };

struct TreeEdge {
    NodeId u;
    NodeId v;
    Capacity weight;
};

// Tree on the nodes of a source graph. For kind cut_equivalent, removing the
// minimum-weight edge on the u-v tree path bipartitions V into a minimum
// uv-cut of the source graph; flow_equivalent only promises the value.
struct CutTree {
    int n = 0;
    std::vector<TreeEdge> edges;
    TreeKind kind = TreeKind::cut_equivalent;
    std::uint64_t source_hash = 0;
};

// Structural sanity: exactly n-1 edges, connected, acyclic. Throws InvalidTree.
void check_tree_shape(const CutTree& t);

// Minimum edge weight on the unique s-u tree path.
Capacity tree_max_flow_value(const CutTree& t, NodeId s, NodeId u);

struct Bipartition {
    NodeSet side; // component containing u after deleting the path-min edge
    Capacity value;
    int tree_edge = -1;
};

// Deletes the minimum-weight edge on the s-u path; ties on equal weights are
// broken toward the edge nearest s. Requires kind cut_equivalent.
Bipartition tree_cut_bipartition(const CutTree& t, NodeId s, NodeId u);

struct Violation {
    NodeId s;
    NodeId t;
    std::string what;
    Capacity tree_value;
    Capacity graph_value;
};

struct ValidationReport {
    std::vector<Violation> violations;
    std::uint64_t pairs_checked = 0;
    bool ok() const { return violations.empty(); }
};

struct ValidateOptions {
    bool value_only = false;      // skip the bipartition check (flow-equivalent trees)
    std::uint64_t sample_pairs = 500; // pair budget once n exceeds exhaustive_limit
    int exhaustive_limit = 60;    // check all pairs up to this many nodes
    std::uint64_t seed = 0;
};

// Checks tree values (and, unless value_only, bipartitions) against exact
// min cuts of g. Violations are collected, never thrown.
ValidationReport validate_cut_equivalent(const WeightedGraph& g, const CutTree& t,
                                         const ValidateOptions& opts = {});

// Canonical bipartition family of a tree: for each edge, the side containing
// node 0, as a sorted vector of hashed bitmasks plus the sets themselves.
std::vector<NodeSet> tree_bipartition_family(const CutTree& t);

} // namespace mcq

#endif
