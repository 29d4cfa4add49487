#include "query_ds.hpp"

#include <algorithm>
#include <climits>

#include "errors.hpp"

namespace mcq {

EulerTourIndex build_euler_tour(const CutTree& t) {
    check_tree_shape(t);
    const int n = t.n;

    std::vector<std::vector<std::pair<NodeId, int>>> adj(static_cast<std::size_t>(n));
    for (int id = 0; id < static_cast<int>(t.edges.size()); ++id) {
        const TreeEdge& e = t.edges[static_cast<std::size_t>(id)];
        adj[static_cast<std::size_t>(e.u)].push_back({e.v, id});
        adj[static_cast<std::size_t>(e.v)].push_back({e.u, id});
    }
    for (auto& list : adj) std::sort(list.begin(), list.end()); // ascending node id

    EulerTourIndex idx;
    idx.root = 0;
    idx.first_visit.assign(static_cast<std::size_t>(n), 0);
    idx.last_visit.assign(static_cast<std::size_t>(n), 0);
    idx.parent.assign(static_cast<std::size_t>(n), -1);
    idx.parent_edge.assign(static_cast<std::size_t>(n), -1);
    idx.tour.reserve(static_cast<std::size_t>(2 * n - 1));

    // iterative DFS appending a node on entry and again after each child
    struct Frame {
        NodeId v;
        std::size_t next_child = 0;
    };
    std::vector<Frame> stack;
    stack.push_back({0, 0});
    idx.tour.push_back(0);
    idx.first_visit[0] = 1;
    while (!stack.empty()) {
        Frame& f = stack.back();
        NodeId v = f.v;
        bool descended = false;
        while (f.next_child < adj[static_cast<std::size_t>(v)].size()) {
            auto [w, id] = adj[static_cast<std::size_t>(v)][f.next_child++];
            if (w == idx.parent[static_cast<std::size_t>(v)]) continue;
            idx.parent[static_cast<std::size_t>(w)] = v;
            idx.parent_edge[static_cast<std::size_t>(w)] = id;
            stack.push_back({w, 0});
            idx.tour.push_back(w);
            idx.first_visit[static_cast<std::size_t>(w)] =
                static_cast<int>(idx.tour.size());
            descended = true;
            break;
        }
        if (!descended) {
            idx.last_visit[static_cast<std::size_t>(v)] =
                static_cast<int>(idx.tour.size());
            stack.pop_back();
            if (!stack.empty()) {
                idx.tour.push_back(stack.back().v);
            }
        }
    }
    if (static_cast<int>(idx.tour.size()) != 2 * n - 1)
        raise(ErrorCode::internal_error, "tour length is not 2n-1");
    return idx;
}

RangeTree2D::RangeTree2D(std::vector<Point2D> points) : pts_(std::move(points)) {
    std::sort(pts_.begin(), pts_.end(), [](const Point2D& a, const Point2D& b) {
        if (a.x != b.x) return a.x < b.x;
        if (a.y != b.y) return a.y < b.y;
        return a.edge_id < b.edge_id;
    });
    xs_.reserve(pts_.size());
    for (const Point2D& p : pts_) xs_.push_back(p.x);
    if (!pts_.empty()) root_ = build(0, static_cast<int>(pts_.size()));
}

int RangeTree2D::build(int lo, int hi) {
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back({lo, hi, -1, -1, {}});
    auto& by_y = nodes_[static_cast<std::size_t>(id)].by_y;
    by_y.reserve(static_cast<std::size_t>(hi - lo));
    for (int i = lo; i < hi; ++i)
        by_y.push_back({pts_[static_cast<std::size_t>(i)].y,
                        pts_[static_cast<std::size_t>(i)].edge_id});
    std::sort(by_y.begin(), by_y.end());
    if (hi - lo > 1) {
        int mid = (lo + hi) / 2;
        int l = build(lo, mid);
        int r = build(mid, hi);
        nodes_[static_cast<std::size_t>(id)].left = l;
        nodes_[static_cast<std::size_t>(id)].right = r;
    }
    return id;
}

void RangeTree2D::query(int node, int x1, int x2, int y1, int y2, Report& out) const {
    if (node < 0) return;
    const Node& nd = nodes_[static_cast<std::size_t>(node)];
    out.visited_nodes += 1;

    int x_lo = xs_[static_cast<std::size_t>(nd.lo)];
    int x_hi = xs_[static_cast<std::size_t>(nd.hi - 1)];
    if (x_lo > x2 || x_hi < x1) return;

    if (x1 <= x_lo && x_hi <= x2) {
        // canonical node: binary search the y-sorted list
        auto lo_it = std::lower_bound(nd.by_y.begin(), nd.by_y.end(),
                                      std::make_pair(y1, INT_MIN));
        for (auto it = lo_it; it != nd.by_y.end() && it->first <= y2; ++it) {
            out.items.push_back(it->second);
            out.visited_nodes += 1;
        }
        return;
    }
    if (nd.left < 0) return; // single point outside the x range
    query(nd.left, x1, x2, y1, y2, out);
    query(nd.right, x1, x2, y1, y2, out);
}

RangeTree2D::Report RangeTree2D::report(int x1, int x2, int y1, int y2) const {
    Report out;
    if (x1 > x2 || y1 > y2) return out;
    query(root_, x1, x2, y1, y2, out);
    return out;
}

QueryDS::QueryDS(const WeightedGraph& g, const CutTree& t, bool validate_tree)
    : g_(g), t_(t), tour_(build_euler_tour(t)),
      rt_([&]() -> RangeTree2D {
          if (g.node_count() != t.n)
              raise(ErrorCode::invalid_input, "graph and tree node counts differ");
          std::vector<Point2D> pts;
          pts.reserve(static_cast<std::size_t>(2 * g.edge_count()));
          for (int id = 0; id < g.edge_count(); ++id) {
              const Edge& e = g.edge(id);
              int fu = tour_.first_visit[static_cast<std::size_t>(e.u)];
              int fv = tour_.first_visit[static_cast<std::size_t>(e.v)];
              pts.push_back({fu, fv, id});
              pts.push_back({fv, fu, id});
          }
          return RangeTree2D(std::move(pts));
      }()) {
    if (t_.kind != TreeKind::cut_equivalent)
        raise(ErrorCode::wrong_tree_kind, "query structure needs a cut-equivalent tree");
    if (validate_tree) {
        ValidationReport vr = validate_cut_equivalent(g_, t_);
        if (!vr.ok())
            raise(ErrorCode::invalid_input, "tree failed cut-equivalence validation");
    }

    const int n = t_.n;
    depth_.assign(static_cast<std::size_t>(n), 0);
    // depths via the tour parents (root first in tour order)
    for (std::size_t i = 0; i < tour_.tour.size(); ++i) {
        NodeId v = tour_.tour[i];
        NodeId p = tour_.parent[static_cast<std::size_t>(v)];
        if (p >= 0)
            depth_[static_cast<std::size_t>(v)] = depth_[static_cast<std::size_t>(p)] + 1;
    }

    int levels = 1;
    while ((1 << levels) < n) ++levels;
    jump_.assign(static_cast<std::size_t>(levels), std::vector<int>(static_cast<std::size_t>(n), -1));
    best_.assign(static_cast<std::size_t>(levels),
                 std::vector<Hop>(static_cast<std::size_t>(n), Hop{Capacity(0), 0, -1}));

    for (int v = 0; v < n; ++v) {
        int p = tour_.parent[static_cast<std::size_t>(v)];
        jump_[0][static_cast<std::size_t>(v)] = p;
        if (p >= 0) {
            int eid = tour_.parent_edge[static_cast<std::size_t>(v)];
            best_[0][static_cast<std::size_t>(v)] =
                Hop{t_.edges[static_cast<std::size_t>(eid)].weight,
                    tour_.first_visit[static_cast<std::size_t>(v)], eid};
        }
    }
    for (int k = 1; k < levels; ++k) {
        for (int v = 0; v < n; ++v) {
            int mid = jump_[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(v)];
            if (mid < 0) continue;
            jump_[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)] =
                jump_[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(mid)];
            if (jump_[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)] >= 0)
                best_[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)] =
                    combine(best_[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(v)],
                            best_[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(mid)]);
        }
    }
}

QueryDS::Hop QueryDS::combine(const Hop& a, const Hop& b) const {
    if (a.edge < 0) return b;
    if (b.edge < 0) return a;
    if (a.weight != b.weight) return a.weight < b.weight ? a : b;
    return a.tie_first_visit <= b.tie_first_visit ? a : b;
}

LightestEdge QueryDS::lightest_edge_on_path(NodeId s, NodeId t) const {
    if (s == t) raise(ErrorCode::invalid_query, "identical endpoints");
    if (s < 0 || s >= t_.n || t < 0 || t >= t_.n)
        raise(ErrorCode::invalid_query, "endpoint out of range");

    Hop acc{Capacity(0), 0, -1};
    int a = s, b = t;
    if (depth_[static_cast<std::size_t>(a)] < depth_[static_cast<std::size_t>(b)])
        std::swap(a, b);
    int diff = depth_[static_cast<std::size_t>(a)] - depth_[static_cast<std::size_t>(b)];
    for (int k = 0; diff; ++k, diff >>= 1) {
        if (diff & 1) {
            acc = combine(acc, best_[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)]);
            a = jump_[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)];
        }
    }
    if (a != b) {
        for (int k = static_cast<int>(jump_.size()) - 1; k >= 0; --k) {
            if (jump_[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)] !=
                jump_[static_cast<std::size_t>(k)][static_cast<std::size_t>(b)]) {
                acc = combine(acc, best_[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)]);
                acc = combine(acc, best_[static_cast<std::size_t>(k)][static_cast<std::size_t>(b)]);
                a = jump_[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)];
                b = jump_[static_cast<std::size_t>(k)][static_cast<std::size_t>(b)];
            }
        }
        acc = combine(acc, best_[0][static_cast<std::size_t>(a)]);
        acc = combine(acc, best_[0][static_cast<std::size_t>(b)]);
    }
    if (acc.edge < 0) raise(ErrorCode::internal_error, "no edge on tree path");

    const TreeEdge& e = t_.edges[static_cast<std::size_t>(acc.edge)];
    // orient so parent_endpoint = parent(child_endpoint) relative to the root
    NodeId child = (tour_.parent[static_cast<std::size_t>(e.u)] == e.v) ? e.u : e.v;
    NodeId par = (child == e.u) ? e.v : e.u;
    return LightestEdge{par, child, e.weight, acc.edge};
}

EdgeReport QueryDS::report_min_cut_edges(NodeId s, NodeId t) const {
    LightestEdge le = lightest_edge_on_path(s, t);
    int fv = tour_.first_visit[static_cast<std::size_t>(le.child_endpoint)];
    int lv = tour_.last_visit[static_cast<std::size_t>(le.child_endpoint)];
    int total = 2 * t_.n - 1;

    // two disjoint rectangles covering I x complement(I) for the subtree
    // interval I of t'
    RangeTree2D::Report r1 = rt_.report(fv, lv, 1, fv - 1);
    RangeTree2D::Report r2 = rt_.report(fv, lv, lv + 1, total);

    EdgeReport out;
    out.split_edge = le;
    out.visited_nodes = r1.visited_nodes + r2.visited_nodes;
    out.edge_ids = std::move(r1.items);
    out.edge_ids.insert(out.edge_ids.end(), r2.items.begin(), r2.items.end());
    out.value = 0;
    for (int id : out.edge_ids) out.value += g_.edge(id).cap;
    return out;
}

QueryDS preprocess_query_ds(const WeightedGraph& g, const CutTree& t, bool validate_tree) {
    return QueryDS(g, t, validate_tree);
}

} // namespace mcq
