#ifndef MCQ_QUERY_DS_HPP
#define MCQ_QUERY_DS_HPP

#include <cstdint>
#include <vector>

#include "cut_tree.hpp"
#include "graph.hpp"

namespace mcq {

// DFS circuit over the tree rooted at node 0, children in ascending id order.
// Positions are 1-based: tour[0] is t_1 and the subtree of v occupies exactly
// [FirstVisit(v), LastVisit(v)].
struct EulerTourIndex {
    std::vector<NodeId> tour;    // length 2n-1
    std::vector<int> first_visit; // node -> position in [1, 2n-1]
    std::vector<int> last_visit;
    std::vector<NodeId> parent;   // -1 at the root
    std::vector<int> parent_edge; // tree edge id toward the parent
    NodeId root = 0;
};

EulerTourIndex build_euler_tour(const CutTree& t);

struct Point2D {
    int x;
    int y;
    int edge_id;
};

// Static 2D range tree: primary tree over x, each node holding its points
// sorted by y. Reporting visits O(log) tree nodes plus the output; the
// returned counter counts tree nodes examined plus points emitted.
class RangeTree2D {
public:
    explicit RangeTree2D(std::vector<Point2D> points);

    struct Report {
        std::vector<int> items; // edge ids
        std::uint64_t visited_nodes = 0;
    };

    // closed rectangle [x1,x2] x [y1,y2]; empty ranges allowed
    Report report(int x1, int x2, int y1, int y2) const;

    int point_count() const { return static_cast<int>(xs_.size()); }

private:
    struct Node {
        int lo, hi;           // point range [lo, hi) in x-sorted order
        int left = -1, right = -1;
        std::vector<std::pair<int, int>> by_y; // (y, edge id) sorted
    };

    int build(int lo, int hi);
    void query(int node, int x1, int x2, int y1, int y2, Report& out) const;

    std::vector<Point2D> pts_; // sorted by (x, y, edge)
    std::vector<int> xs_;
    std::vector<Node> nodes_;
    int root_ = -1;
};

struct LightestEdge {
    NodeId parent_endpoint; // s' = parent(t')
    NodeId child_endpoint;  // t'
    Capacity weight;
    int tree_edge = -1;
};

struct EdgeReport {
    std::vector<int> edge_ids;
    Capacity value;
    std::uint64_t visited_nodes = 0;
    LightestEdge split_edge;
};

// Preprocessed (graph, cut-equivalent tree) pair answering min-cut edge
// queries in output-sensitive time: lightest path edge via binary lifting,
// then two orthogonal range reports over the Euler-tour point set.
class QueryDS {
public:
    QueryDS(const WeightedGraph& g, const CutTree& t, bool validate_tree = false);

    const EulerTourIndex& tour() const { return tour_; }
    const RangeTree2D& range_tree() const { return rt_; }
    const WeightedGraph& graph() const { return g_; }
    const CutTree& tree() const { return t_; }

    LightestEdge lightest_edge_on_path(NodeId s, NodeId t) const;
    EdgeReport report_min_cut_edges(NodeId s, NodeId t) const;

private:
    WeightedGraph g_;
    CutTree t_;
    EulerTourIndex tour_;
    RangeTree2D rt_;

    // binary lifting: jump[k][v] = 2^k-ancestor; best[k][v] = lightest edge on
    // the jump, as (weight, first_visit of child endpoint, tree edge id)
    struct Hop {
        Capacity weight;
        int tie_first_visit;
        int edge;
    };
    std::vector<std::vector<int>> jump_;
    std::vector<std::vector<Hop>> best_;
    std::vector<int> depth_;

    Hop combine(const Hop& a, const Hop& b) const;
};

QueryDS preprocess_query_ds(const WeightedGraph& g, const CutTree& t,
                            bool validate_tree = false);

} // namespace mcq

#endif
