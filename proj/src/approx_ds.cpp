#include "approx_ds.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include "errors.hpp"

namespace mcq {

int CutStore::insert(const NodeSet& side, const Capacity& value) {
    NodeSet canon = side.canonical_bipartition_side();
    std::uint64_t h = canon.hash();
    auto range = std::equal_range(index_.begin(), index_.end(),
                                  std::make_pair(h, -1),
                                  [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto it = range.first; it != range.second; ++it) {
        if (entries_[static_cast<std::size_t>(it->second)].side == canon)
            return it->second;
    }
    int id = static_cast<int>(entries_.size());
    entries_.push_back(Entry{canon, value, static_cast<std::uint64_t>(id), std::nullopt});
    index_.insert(range.second, {h, id});
    return id;
}

const std::vector<int>& CutStore::crossing_edges(int idx, const WeightedGraph& g) const {
    const Entry& e = entries_[static_cast<std::size_t>(idx)];
    if (!e.crossing) e.crossing = crossing_edges_of_side(g, e.side);
    return *e.crossing;
}

namespace {

int log2_ceil(std::int64_t n) {
    int b = 0;
    while ((std::int64_t{1} << b) < n) ++b;
    return std::max(b, 1);
}

struct Builder {
    const WeightedGraph& g;
    const OraclePtr& oracle;
    Rational eps;
    bool refine;
    int pivot_budget;
    ApproxMinCutDS& ds;
    FlowEmulator& emulator;
    ApproxBuildAudit& audit;
    std::map<std::pair<NodeId, NodeId>, bool> emulator_seen;

    void add_emulator_edge(NodeId a, NodeId b, const Capacity& base) {
        auto key = std::minmax(a, b);
        // duplicates keep the first edge
        if (emulator_seen.emplace(std::make_pair(key.first, key.second), true).second)
            emulator.edges.push_back({key.first, key.second, base});
    }

    ApproxDepthStats& depth_stats(int depth) {
        if (static_cast<int>(audit.depths.size()) <= depth)
            audit.depths.resize(static_cast<std::size_t>(depth) + 1);
        return audit.depths[static_cast<std::size_t>(depth)];
    }

    // One query to the oracle; the cut side is restricted and tie-broken here.
    struct QueriedCut {
        NodeSet side;       // side of u in G (possibly component-refined)
        Capacity value;
        int store_index;
        TieBrokenValue tie;
        int restricted_size; // |S'_u|
    };

    QueriedCut query_pair_cut(NodeId p, NodeId u, const std::vector<NodeId>& members,
                        int depth) {
        Cut cut = oracle->query_cut(p, u);
        ApproxDepthStats& st = depth_stats(depth);
        st.cut_queries += 1;
        audit.total_cut_queries += 1;

        NodeSet side = std::move(cut.side);
        Capacity value = std::move(cut.value);
        std::size_t crossing = cut.crossing_edges.size();

        if (refine) {
            // replace S_u by the connected component of u in G minus the cut
            // edges; value can only shrink and p stays outside
            std::vector<char> banned(static_cast<std::size_t>(g.edge_count()), 0);
            for (int id : cut.crossing_edges) banned[static_cast<std::size_t>(id)] = 1;
            NodeSet comp(g.node_count());
            std::queue<NodeId> q;
            comp.set(u);
            q.push(u);
            while (!q.empty()) {
                NodeId x = q.front();
                q.pop();
                for (int id : g.incidence()[static_cast<std::size_t>(x)]) {
                    if (banned[static_cast<std::size_t>(id)]) continue;
                    const Edge& e = g.edge(id);
                    NodeId y = (e.u == x) ? e.v : e.u;
                    if (!comp.test(y)) {
                        comp.set(y);
                        q.push(y);
                    }
                }
            }
            if (!(comp == side)) {
                side = std::move(comp);
                value = cut_value_of_side(g, side);
                crossing = crossing_edges_of_side(g, side).size();
            }
        }
        st.crossing_edges += crossing;

        QueriedCut qc;
        qc.store_index = ds.store.insert(side, value);
        const CutStore::Entry& entry = ds.store.entry(qc.store_index);
        qc.tie = TieBrokenValue{entry.value, entry.serial};
        qc.side = std::move(side);
        qc.value = std::move(value);
        int restricted = 0;
        for (NodeId v : members)
            if (qc.side.test(v)) ++restricted;
        qc.restricted_size = restricted;
        return qc;
    }

    // One expansion operation on V' = members: pivot retries, the n'-1 oracle
    // queries, the g/f reassignment, the A/B arrays and the emulator edges.
    // Creates and returns one record; children are left for the driver.
    int expansion_operation(std::vector<NodeId> members, int depth, RngStream rng) {
        const int nprime = static_cast<int>(members.size());
        ExpansionRecord rec;
        rec.members = members;
        rec.depth = depth;

        std::vector<int> member_pos(static_cast<std::size_t>(g.node_count()), -1);
        for (int i = 0; i < nprime; ++i)
            member_pos[static_cast<std::size_t>(members[static_cast<std::size_t>(i)])] = i;

        std::vector<QueriedCut> cuts; // parallel to members, empty slot at pivot
        NodeId pivot = -1;
        std::vector<int> small_members; // positions of V_small, |S'_u| <= n'/2

        for (int attempt = 0;; ++attempt) {
            if (attempt >= pivot_budget)
                raise(ErrorCode::pivot_budget_exhausted,
                      "no pivot reached |V_small| >= n'/4");
            pivot = members[static_cast<std::size_t>(
                rng.uniform(static_cast<std::uint64_t>(nprime)))];
            cuts.assign(static_cast<std::size_t>(nprime), QueriedCut{});
            small_members.clear();
            for (int i = 0; i < nprime; ++i) {
                NodeId u = members[static_cast<std::size_t>(i)];
                if (u == pivot) continue;
                cuts[static_cast<std::size_t>(i)] = query_pair_cut(pivot, u, members, depth);
                if (2 * cuts[static_cast<std::size_t>(i)].restricted_size <= nprime)
                    small_members.push_back(i);
            }
            if (4 * static_cast<int>(small_members.size()) >= nprime) break;
            depth_stats(depth).failed_pivots += 1;
            rec.pivot_retries += 1;
        }
        rec.pivot = pivot;
        depth_stats(depth).expansions += 1;

        // reassignment: g over V_big, then f over V_small absorbing V''_big
        const int pivot_pos = member_pos[static_cast<std::size_t>(pivot)];
        std::vector<char> is_small(static_cast<std::size_t>(nprime), 0);
        for (int i : small_members) is_small[static_cast<std::size_t>(i)] = 1;

        std::vector<int> big_members;
        for (int i = 0; i < nprime; ++i)
            if (!is_small[static_cast<std::size_t>(i)]) big_members.push_back(i);

        auto by_value = [&](int a, int b) {
            return cuts[static_cast<std::size_t>(a)].tie < cuts[static_cast<std::size_t>(b)].tie;
        };

        std::vector<int> g_of(static_cast<std::size_t>(nprime), -1);
        {
            std::vector<int> order;
            for (int i : big_members)
                if (i != pivot_pos) order.push_back(i);
            std::sort(order.begin(), order.end(), by_value);
            std::vector<char> in_big_prime(static_cast<std::size_t>(nprime), 0);
            for (int i : big_members) in_big_prime[static_cast<std::size_t>(i)] = 1;
            for (int u : order) {
                const NodeSet& side = cuts[static_cast<std::size_t>(u)].side;
                for (int v = 0; v < nprime; ++v) {
                    if (!in_big_prime[static_cast<std::size_t>(v)]) continue;
                    if (!side.test(members[static_cast<std::size_t>(v)])) continue;
                    g_of[static_cast<std::size_t>(v)] = u;
                    in_big_prime[static_cast<std::size_t>(v)] = 0;
                }
            }
        }

        std::vector<int> f_of(static_cast<std::size_t>(nprime), -1);
        std::vector<int> part_of(static_cast<std::size_t>(nprime), 0); // 0 = V''_big
        std::vector<int> part_owner; // part id -> position of the owning cut's u
        {
            std::vector<int> order = small_members;
            std::sort(order.begin(), order.end(), by_value);
            std::vector<char> in_small_prime = is_small;
            std::vector<char> in_big2(static_cast<std::size_t>(nprime), 0);
            for (int i : big_members) in_big2[static_cast<std::size_t>(i)] = 1;

            auto part_id_for = [&](int u) {
                for (int k = 0; k < static_cast<int>(part_owner.size()); ++k)
                    if (part_owner[static_cast<std::size_t>(k)] == u) return k + 1;
                part_owner.push_back(u);
                return static_cast<int>(part_owner.size());
            };

            for (int u : order) {
                const NodeSet& side = cuts[static_cast<std::size_t>(u)].side;
                for (int v = 0; v < nprime; ++v) {
                    if (!side.test(members[static_cast<std::size_t>(v)])) continue;
                    if (in_small_prime[static_cast<std::size_t>(v)]) {
                        f_of[static_cast<std::size_t>(v)] = u;
                        part_of[static_cast<std::size_t>(v)] = part_id_for(u);
                        in_small_prime[static_cast<std::size_t>(v)] = 0;
                    } else if (in_big2[static_cast<std::size_t>(v)] && v != pivot_pos) {
                        // absorb a big node when this cut's value is within
                        // (1+eps) of its g-assigned cut
                        int gv = g_of[static_cast<std::size_t>(v)];
                        if (gv >= 0 &&
                            eps.le_scaled(cuts[static_cast<std::size_t>(u)].tie.base,
                                          cuts[static_cast<std::size_t>(gv)].tie.base)) {
                            f_of[static_cast<std::size_t>(v)] = u;
                            part_of[static_cast<std::size_t>(v)] = part_id_for(u);
                            in_big2[static_cast<std::size_t>(v)] = 0;
                        }
                    }
                }
            }
        }

        // record arrays A and B, plus the emulator edges
        rec.cut_of.assign(static_cast<std::size_t>(nprime), -1);
        rec.value_of.assign(static_cast<std::size_t>(nprime), TieBrokenValue{Capacity(0), 0});
        rec.part_of = part_of;
        for (int v = 0; v < nprime; ++v) {
            if (v == pivot_pos) continue;
            NodeId vid = members[static_cast<std::size_t>(v)];
            int assigned = (f_of[static_cast<std::size_t>(v)] >= 0)
                               ? f_of[static_cast<std::size_t>(v)]
                               : g_of[static_cast<std::size_t>(v)];
            if (assigned < 0)
                raise(ErrorCode::internal_error, "node left without a cut assignment");
            const QueriedCut& qc = cuts[static_cast<std::size_t>(assigned)];
            rec.cut_of[static_cast<std::size_t>(v)] = qc.store_index;
            rec.value_of[static_cast<std::size_t>(v)] = qc.tie;
            add_emulator_edge(vid, pivot, qc.tie.base);
        }

        int part_count = static_cast<int>(part_owner.size()) + 1; // part 0 = V''_big
        rec.child_record.assign(static_cast<std::size_t>(part_count), -1);
        int rec_index = static_cast<int>(ds.records.size());
        ds.records.push_back(std::move(rec));
        return rec_index;
    }

    // Recursion driver: one expansion operation per set, then recurse on the
    // resulting parts down to singletons.
    int expand(std::vector<NodeId> members, int depth, RngStream rng) {
        if (members.size() <= 1) return -1;
        ds.depth = std::max(ds.depth, depth + 1);
        audit.recursion_depth = std::max(audit.recursion_depth, depth + 1);

        int rec_index = expansion_operation(std::move(members), depth, rng);
        const int part_count =
            static_cast<int>(ds.records[static_cast<std::size_t>(rec_index)].child_record.size());

        for (int part = 0; part < part_count; ++part) {
            std::vector<NodeId> sub;
            {
                const ExpansionRecord& rec = ds.records[static_cast<std::size_t>(rec_index)];
                for (std::size_t v = 0; v < rec.members.size(); ++v)
                    if (rec.part_of[v] == part) sub.push_back(rec.members[v]);
            }
            if (sub.size() >= 2) {
                int child = expand(std::move(sub), depth + 1,
                                   rng.derive("part").derive(static_cast<std::uint64_t>(part)));
                ds.records[static_cast<std::size_t>(rec_index)]
                    .child_record[static_cast<std::size_t>(part)] = child;
            }
        }
        return rec_index;
    }
};

} // namespace

ApproxMinCutDS::Answer ApproxMinCutDS::query(NodeId s, NodeId t) const {
    if (s == t) raise(ErrorCode::invalid_query, "identical endpoints");
    if (s < 0 || s >= n || t < 0 || t >= n)
        raise(ErrorCode::invalid_query, "endpoint out of range");

    int rec_idx = root;
    for (;;) {
        const ExpansionRecord& rec = records[static_cast<std::size_t>(rec_idx)];
        auto pos = [&](NodeId v) {
            auto it = std::lower_bound(rec.members.begin(), rec.members.end(), v);
            if (it == rec.members.end() || *it != v)
                raise(ErrorCode::internal_error, "query pair lost during descent");
            return static_cast<int>(it - rec.members.begin());
        };
        int ps = pos(s), pt = pos(t);
        int part_s = rec.part_of[static_cast<std::size_t>(ps)];
        int part_t = rec.part_of[static_cast<std::size_t>(pt)];
        if (part_s == part_t) {
            rec_idx = rec.child_record[static_cast<std::size_t>(part_s)];
            if (rec_idx < 0)
                raise(ErrorCode::internal_error, "descent hit a singleton part");
            continue;
        }

        // the record that separated s and t: return the smaller separating cut
        int best = -1;
        TieBrokenValue best_val{Capacity(0), 0};
        for (int cand : {rec.cut_of[static_cast<std::size_t>(ps)],
                         rec.cut_of[static_cast<std::size_t>(pt)]}) {
            if (cand < 0) continue; // the pivot has no stored cut
            const CutStore::Entry& e = store.entry(cand);
            if (e.side.test(s) == e.side.test(t)) continue;
            TieBrokenValue v{e.value, e.serial};
            if (best < 0 || v < best_val) {
                best = cand;
                best_val = v;
            }
        }
        if (best < 0)
            raise(ErrorCode::internal_error,
                  "neither stored cut separates the queried pair");
        return Answer{best, best_val};
    }
}

ApproxBuildResult build_approx_ds(const WeightedGraph& g, const OraclePtr& oracle,
                                  Rational eps, std::uint64_t seed,
                                  const ApproxBuildOptions& opts) {
    ApproxBuildResult result;
    result.ds.n = g.node_count();
    result.ds.eps = eps;
    result.ds.seed = seed;
    result.ds.source_hash = g.content_hash();
    result.emulator.n = g.node_count();
    result.emulator.eps = eps;

    Builder b{g,
              oracle,
              eps,
              opts.refine_cuts.value_or(g.unit_capacity()),
              opts.pivot_budget_factor * log2_ceil(std::max(g.node_count(), 2)),
              result.ds,
              result.emulator,
              result.audit,
              {}};

    std::vector<NodeId> all(static_cast<std::size_t>(g.node_count()));
    for (int v = 0; v < g.node_count(); ++v) all[static_cast<std::size_t>(v)] = v;

    if (g.node_count() >= 2)
        result.ds.root = b.expand(std::move(all), 0, RngStream(seed).derive("approx"));
    result.audit.store_size = result.ds.store.size();
    return result;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
        for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[static_cast<std::size_t>(a)] = b;
        return true;
    }
};

CutTree maximum_spanning_tree(int n, std::vector<TreeEdge> candidates,
                              std::uint64_t source_hash, ErrorCode on_disconnected,
                              const char* disconnected_msg) {
    std::sort(candidates.begin(), candidates.end(), [](const TreeEdge& a, const TreeEdge& b) {
        if (a.weight != b.weight) return a.weight > b.weight;
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
    });
    UnionFind uf(n);
    CutTree t;
    t.n = n;
    t.kind = TreeKind::flow_equivalent;
    t.source_hash = source_hash;
    for (TreeEdge& e : candidates) {
        if (uf.unite(e.u, e.v)) t.edges.push_back(std::move(e));
        if (static_cast<int>(t.edges.size()) == n - 1) break;
    }
    if (static_cast<int>(t.edges.size()) != n - 1)
        raise(on_disconnected, disconnected_msg);
    return t;
}

} // namespace

CutTree flow_equivalent_from_complete(const std::vector<std::vector<Capacity>>& values) {
    const int n = static_cast<int>(values.size());
    if (n == 0) raise(ErrorCode::invalid_matrix, "empty matrix");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(values[static_cast<std::size_t>(i)].size()) != n)
            raise(ErrorCode::invalid_matrix, "matrix is not square");
        for (int j = 0; j < n; ++j) {
            if (values[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] !=
                values[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])
                raise(ErrorCode::invalid_matrix, "matrix is not symmetric");
            if (i != j &&
                values[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] <= 0)
                raise(ErrorCode::invalid_matrix, "off-diagonal entries must be positive");
        }
    }
    if (n == 1) {
        CutTree t;
        t.n = 1;
        t.kind = TreeKind::flow_equivalent;
        return t;
    }
    std::vector<TreeEdge> candidates;
    candidates.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            candidates.push_back(
                {i, j, values[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]});
    return maximum_spanning_tree(n, std::move(candidates), 0, ErrorCode::invalid_matrix,
                                 "matrix graph is disconnected");
}

CutTree flow_equivalent_from_emulator(const FlowEmulator& h) {
    if (h.n <= 0) raise(ErrorCode::emulator_disconnected, "empty emulator");
    std::vector<TreeEdge> candidates;
    candidates.reserve(h.edges.size());
    for (const auto& e : h.edges) candidates.push_back({e.u, e.v, e.base});
    if (h.n == 1) {
        CutTree t;
        t.n = 1;
        t.kind = TreeKind::flow_equivalent;
        return t;
    }
    return maximum_spanning_tree(h.n, std::move(candidates), 0,
                                 ErrorCode::emulator_disconnected,
                                 "flow emulator does not connect V");
}

} // namespace mcq
