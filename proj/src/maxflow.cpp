#include "maxflow.hpp"

#include <algorithm>
#include <queue>

#include "errors.hpp"

namespace mcq {

MaxFlowSolver::MaxFlowSolver(const WeightedGraph& g)
    : g_(&g), n_(g.node_count()), inf_(g.total_capacity() + 1) {
    adj_.assign(static_cast<std::size_t>(n_), {});
    arcs_.reserve(g.edges().size() * 2);
    for (int id = 0; id < g.edge_count(); ++id) {
        const Edge& e = g.edge(id);
        adj_[static_cast<std::size_t>(e.u)].push_back(static_cast<int>(arcs_.size()));
        arcs_.push_back({e.v, e.cap, id});
        adj_[static_cast<std::size_t>(e.v)].push_back(static_cast<int>(arcs_.size()));
        arcs_.push_back({e.u, e.cap, id});
    }
    level_.assign(static_cast<std::size_t>(n_), -1);
    iter_.assign(static_cast<std::size_t>(n_), 0);
    bfs_queue_.reserve(static_cast<std::size_t>(n_));
}

bool MaxFlowSolver::bfs_levels(NodeId s, NodeId t) {
    std::fill(level_.begin(), level_.end(), -1);
    bfs_queue_.clear();
    level_[static_cast<std::size_t>(s)] = 0;
    bfs_queue_.push_back(s);
    for (std::size_t head = 0; head < bfs_queue_.size(); ++head) {
        int v = bfs_queue_[head];
        for (int ai : adj_[static_cast<std::size_t>(v)]) {
            const Arc& a = arcs_[static_cast<std::size_t>(ai)];
            if (level_[static_cast<std::size_t>(a.to)] < 0 && a.residual > 0) {
                level_[static_cast<std::size_t>(a.to)] = level_[static_cast<std::size_t>(v)] + 1;
                bfs_queue_.push_back(a.to);
            }
        }
    }
    return level_[static_cast<std::size_t>(t)] >= 0;
}

Capacity MaxFlowSolver::dfs_push(NodeId v, NodeId t, Capacity limit) {
    if (v == t) return limit;
    for (int& i = iter_[static_cast<std::size_t>(v)];
         i < static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); ++i) {
        int ai = adj_[static_cast<std::size_t>(v)][static_cast<std::size_t>(i)];
        Arc& a = arcs_[static_cast<std::size_t>(ai)];
        if (a.residual <= 0 || level_[static_cast<std::size_t>(a.to)] !=
                                   level_[static_cast<std::size_t>(v)] + 1)
            continue;
        Capacity pushed = dfs_push(a.to, t, limit < a.residual ? limit : a.residual);
        if (pushed > 0) {
            a.residual -= pushed;
            arcs_[static_cast<std::size_t>(ai ^ 1)].residual += pushed;
            return pushed;
        }
    }
    return 0;
}

Capacity MaxFlowSolver::run_flow(NodeId s, NodeId t) {
    if (s == t) raise(ErrorCode::invalid_query, "identical endpoints");
    if (s < 0 || s >= n_ || t < 0 || t >= n_)
        raise(ErrorCode::invalid_query, "endpoint out of range");

    // reset residuals to the original capacities
    for (int id = 0; id < g_->edge_count(); ++id) {
        arcs_[static_cast<std::size_t>(2 * id)].residual = g_->edge(id).cap;
        arcs_[static_cast<std::size_t>(2 * id + 1)].residual = g_->edge(id).cap;
    }

    Capacity flow = 0;
    while (bfs_levels(s, t)) {
        std::fill(iter_.begin(), iter_.end(), 0);
        for (;;) {
            Capacity pushed = dfs_push(s, t, inf_);
            if (pushed == 0) break;
            flow += pushed;
        }
    }
    return flow;
}

Capacity MaxFlowSolver::max_flow_value(NodeId s, NodeId t) { return run_flow(s, t); }

Cut MaxFlowSolver::min_cut(NodeId s, NodeId t) {
    Capacity flow = run_flow(s, t);

    // minimal t-side: nodes with a residual path to t (reverse BFS along
    // residual arcs)
    NodeSet side(n_);
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    std::queue<int> q;
    seen[static_cast<std::size_t>(t)] = 1;
    side.set(t);
    q.push(t);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int ai : adj_[static_cast<std::size_t>(v)]) {
            // arc ai: v -> w; its pair is w -> v; w reaches v if the pair has
            // residual capacity
            const Arc& a = arcs_[static_cast<std::size_t>(ai)];
            const Arc& rev = arcs_[static_cast<std::size_t>(ai ^ 1)];
            if (rev.residual > 0 && !seen[static_cast<std::size_t>(a.to)]) {
                seen[static_cast<std::size_t>(a.to)] = 1;
                side.set(a.to);
                q.push(a.to);
            }
        }
    }
    if (side.test(s)) raise(ErrorCode::internal_error, "flow did not saturate a cut");

    Cut cut;
    cut.side = side;
    cut.designated = t;
    cut.crossing_edges = crossing_edges_of_side(*g_, side);
    cut.value = 0;
    for (int id : cut.crossing_edges) cut.value += g_->edge(id).cap;
    if (cut.value != flow)
        raise(ErrorCode::internal_error, "max-flow/min-cut mismatch");
    return cut;
}

Cut max_flow_min_cut(const WeightedGraph& g, NodeId s, NodeId t) {
    MaxFlowSolver solver(g);
    return solver.min_cut(s, t);
}

Cut brute_force_min_cut(const WeightedGraph& g, NodeId s, NodeId t) {
    const int n = g.node_count();
    if (n > 20) raise(ErrorCode::oracle_scale_exceeded, "brute force limited to n <= 20");
    if (s == t) raise(ErrorCode::invalid_query, "identical endpoints");

    std::uint64_t best_mask = 0;
    Capacity best_value = -1;
    const std::uint64_t full = (n == 64) ? ~0ULL : ((1ULL << n) - 1);
    for (std::uint64_t mask = 1; mask < full; ++mask) {
        bool has_t = (mask >> t) & 1;
        bool has_s = (mask >> s) & 1;
        if (has_s == has_t) continue;
        std::uint64_t t_side = has_t ? mask : (full & ~mask);
        Capacity v = 0;
        for (const Edge& e : g.edges())
            if (((t_side >> e.u) & 1) != ((t_side >> e.v) & 1)) v += e.cap;
        if (best_value < 0 || v < best_value ||
            (v == best_value && t_side < best_mask)) {
            best_value = v;
            best_mask = t_side;
        }
    }

    Cut cut;
    cut.side = NodeSet(n);
    for (int i = 0; i < n; ++i)
        if ((best_mask >> i) & 1) cut.side.set(i);
    cut.designated = t;
    cut.value = best_value;
    cut.crossing_edges = crossing_edges_of_side(g, cut.side);
    return cut;
}

std::vector<std::vector<Capacity>> all_pairs_min_cut_bruteforce(const WeightedGraph& g) {
    const int n = g.node_count();
    if (n > 14) raise(ErrorCode::oracle_scale_exceeded, "all-pairs brute force limited to n <= 14");

    const std::uint64_t total = 1ULL << n;
    std::vector<Capacity> value(total, Capacity(0));
    for (std::uint64_t mask = 1; mask + 1 < total; ++mask) {
        Capacity v = 0;
        for (const Edge& e : g.edges())
            if (((mask >> e.u) & 1) != ((mask >> e.v) & 1)) v += e.cap;
        value[mask] = std::move(v);
    }

    std::vector<std::vector<Capacity>> out(static_cast<std::size_t>(n),
                                           std::vector<Capacity>(static_cast<std::size_t>(n), 0));
    for (int s = 0; s < n; ++s) {
        for (int t = s + 1; t < n; ++t) {
            Capacity best = -1;
            for (std::uint64_t mask = 1; mask + 1 < total; ++mask) {
                if (((mask >> s) & 1) == ((mask >> t) & 1)) continue;
                if (best < 0 || value[mask] < best) best = value[mask];
            }
            out[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)] = best;
            out[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)] = best;
        }
    }
    return out;
}

} // namespace mcq
