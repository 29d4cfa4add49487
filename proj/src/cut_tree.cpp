#include "cut_tree.hpp"

#include <algorithm>
#include <queue>

#include "errors.hpp"
#include "maxflow.hpp"
#include "rng.hpp"

namespace mcq {

namespace {

std::vector<std::vector<std::pair<int, int>>> adjacency(const CutTree& t) {
    // (neighbor, edge id)
    std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(t.n));
    for (int id = 0; id < static_cast<int>(t.edges.size()); ++id) {
        const TreeEdge& e = t.edges[static_cast<std::size_t>(id)];
        adj[static_cast<std::size_t>(e.u)].push_back({e.v, id});
        adj[static_cast<std::size_t>(e.v)].push_back({e.u, id});
    }
    return adj;
}

// Edge ids along the unique s->u path, in path order starting at s.
std::vector<int> path_edges(const CutTree& t, NodeId s, NodeId u) {
    auto adj = adjacency(t);
    std::vector<int> parent_edge(static_cast<std::size_t>(t.n), -1);
    std::vector<int> parent(static_cast<std::size_t>(t.n), -1);
    std::vector<char> seen(static_cast<std::size_t>(t.n), 0);
    std::queue<int> q;
    q.push(s);
    seen[static_cast<std::size_t>(s)] = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        if (v == u) break;
        for (auto [w, id] : adj[static_cast<std::size_t>(v)]) {
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                parent[static_cast<std::size_t>(w)] = v;
                parent_edge[static_cast<std::size_t>(w)] = id;
                q.push(w);
            }
        }
    }
    if (!seen[static_cast<std::size_t>(u)])
        raise(ErrorCode::invalid_tree, "tree is not connected");
    std::vector<int> rev;
    for (int v = u; v != s; v = parent[static_cast<std::size_t>(v)])
        rev.push_back(parent_edge[static_cast<std::size_t>(v)]);
    std::reverse(rev.begin(), rev.end());
    return rev;
}

} // namespace

void check_tree_shape(const CutTree& t) {
    if (t.n <= 0) raise(ErrorCode::invalid_tree, "empty tree");
    if (static_cast<int>(t.edges.size()) != t.n - 1)
        raise(ErrorCode::invalid_tree, "tree must have exactly n-1 edges");
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(t.n));
    for (const TreeEdge& e : t.edges) {
        if (e.u < 0 || e.u >= t.n || e.v < 0 || e.v >= t.n || e.u == e.v)
            raise(ErrorCode::invalid_tree, "bad tree edge");
        adj[static_cast<std::size_t>(e.u)].push_back(e.v);
        adj[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    std::vector<char> seen(static_cast<std::size_t>(t.n), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : adj[static_cast<std::size_t>(v)]) {
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++count;
                q.push(w);
            }
        }
    }
    if (count != t.n) raise(ErrorCode::invalid_tree, "tree is not connected");
}

Capacity tree_max_flow_value(const CutTree& t, NodeId s, NodeId u) {
    if (s == u) raise(ErrorCode::invalid_query, "identical endpoints");
    std::vector<int> path = path_edges(t, s, u);
    Capacity best = t.edges[static_cast<std::size_t>(path.front())].weight;
    for (int id : path)
        best = std::min(best, t.edges[static_cast<std::size_t>(id)].weight);
    return best;
}

Bipartition tree_cut_bipartition(const CutTree& t, NodeId s, NodeId u) {
    if (t.kind != TreeKind::cut_equivalent)
        raise(ErrorCode::wrong_tree_kind, "bipartition requires a cut-equivalent tree");
    if (s == u) raise(ErrorCode::invalid_query, "identical endpoints");

    std::vector<int> path = path_edges(t, s, u);
    int pick = path.front();
    for (int id : path) { // first (nearest to s) among minimum weights
        if (t.edges[static_cast<std::size_t>(id)].weight <
            t.edges[static_cast<std::size_t>(pick)].weight)
            pick = id;
    }

    // component containing u after removing `pick`
    auto adj = adjacency(t);
    NodeSet side(t.n);
    std::vector<char> seen(static_cast<std::size_t>(t.n), 0);
    std::queue<int> q;
    q.push(u);
    seen[static_cast<std::size_t>(u)] = 1;
    side.set(u);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (auto [w, id] : adj[static_cast<std::size_t>(v)]) {
            if (id == pick || seen[static_cast<std::size_t>(w)]) continue;
            seen[static_cast<std::size_t>(w)] = 1;
            side.set(w);
            q.push(w);
        }
    }

    Bipartition bp;
    bp.side = std::move(side);
    bp.value = t.edges[static_cast<std::size_t>(pick)].weight;
    bp.tree_edge = pick;
    return bp;
}

ValidationReport validate_cut_equivalent(const WeightedGraph& g, const CutTree& t,
                                         const ValidateOptions& opts) {
    ValidationReport report;
    if (g.node_count() != t.n) {
        report.violations.push_back({0, 0, "node count mismatch", 0, 0});
        return report;
    }
    try {
        check_tree_shape(t);
    } catch (const Error& e) {
        report.violations.push_back({0, 0, e.what(), 0, 0});
        return report;
    }

    std::vector<std::pair<NodeId, NodeId>> pairs;
    const int n = g.node_count();
    if (n <= opts.exhaustive_limit) {
        for (NodeId s = 0; s < n; ++s)
            for (NodeId u = s + 1; u < n; ++u) pairs.push_back({s, u});
    } else {
        RngStream rng = RngStream(opts.seed).derive("validate-pairs");
        for (std::uint64_t k = 0; k < opts.sample_pairs; ++k) {
            NodeId s = static_cast<NodeId>(rng.uniform(static_cast<std::uint64_t>(n)));
            NodeId u = static_cast<NodeId>(rng.uniform(static_cast<std::uint64_t>(n)));
            if (s == u) u = (u + 1) % n;
            pairs.push_back({s, u});
        }
    }

    MaxFlowSolver solver(g);
    for (auto [s, u] : pairs) {
        ++report.pairs_checked;
        Capacity tree_val = tree_max_flow_value(t, s, u);
        Capacity graph_val = solver.max_flow_value(s, u);
        if (tree_val != graph_val) {
            report.violations.push_back({s, u, "tree value differs from min-cut value",
                                         tree_val, graph_val});
            continue;
        }
        if (!opts.value_only && t.kind == TreeKind::cut_equivalent) {
            Bipartition bp = tree_cut_bipartition(t, s, u);
            Capacity side_val = cut_value_of_side(g, bp.side);
            if (side_val != graph_val)
                report.violations.push_back({s, u, "tree bipartition is not a minimum cut",
                                             side_val, graph_val});
        }
    }
    return report;
}

std::vector<NodeSet> tree_bipartition_family(const CutTree& t) {
    auto adj = adjacency(t);
    std::vector<NodeSet> family;
    family.reserve(t.edges.size());
    for (int cut_id = 0; cut_id < static_cast<int>(t.edges.size()); ++cut_id) {
        NodeSet side(t.n);
        std::vector<char> seen(static_cast<std::size_t>(t.n), 0);
        std::queue<int> q;
        q.push(0);
        seen[0] = 1;
        side.set(0);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (auto [w, id] : adj[static_cast<std::size_t>(v)]) {
                if (id == cut_id || seen[static_cast<std::size_t>(w)]) continue;
                seen[static_cast<std::size_t>(w)] = 1;
                side.set(w);
                q.push(w);
            }
        }
        family.push_back(std::move(side));
    }
    std::sort(family.begin(), family.end(), [](const NodeSet& a, const NodeSet& b) {
        return a.words() < b.words();
    });
    return family;
}

} // namespace mcq
