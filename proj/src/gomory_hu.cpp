#include "gomory_hu.hpp"

#include <algorithm>
#include <queue>

#include "errors.hpp"

namespace mcq {

PartitionTree::PartitionTree(int n) : n_(n) {
    SuperNode root;
    root.nodes.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) root.nodes[static_cast<std::size_t>(v)] = v;
    supers_.push_back(std::move(root));
    owner_.assign(static_cast<std::size_t>(n), 0);
}

std::vector<int> PartitionTree::live_ids() const {
    std::vector<int> ids;
    for (int i = 0; i < super_count(); ++i)
        if (supers_[static_cast<std::size_t>(i)].alive) ids.push_back(i);
    return ids;
}

bool PartitionTree::all_singletons() const {
    for (const SuperNode& s : supers_)
        if (s.alive && s.nodes.size() > 1) return false;
    return true;
}

int PartitionTree::split(int i, const std::vector<NodeId>& moved, const Capacity& w,
                         const std::vector<int>& rewire) {
    SuperNode& src = supers_[static_cast<std::size_t>(i)];
    if (moved.empty() || moved.size() >= src.nodes.size())
        raise(ErrorCode::internal_error, "split must move a proper nonempty subset");

    std::vector<char> is_moved(static_cast<std::size_t>(n_), 0);
    for (NodeId v : moved) is_moved[static_cast<std::size_t>(v)] = 1;

    int fresh = super_count();
    SuperNode node;
    node.nodes = moved;
    std::sort(node.nodes.begin(), node.nodes.end());

    std::vector<NodeId> staying;
    staying.reserve(src.nodes.size() - moved.size());
    for (NodeId v : src.nodes)
        if (!is_moved[static_cast<std::size_t>(v)]) staying.push_back(v);
    src.nodes = std::move(staying);

    std::vector<char> moves_away(static_cast<std::size_t>(super_count() + 1), 0);
    for (int j : rewire) moves_away[static_cast<std::size_t>(j)] = 1;

    std::vector<std::pair<int, Capacity>> kept;
    for (auto& [j, weight] : src.neighbors) {
        if (moves_away[static_cast<std::size_t>(j)]) {
            node.neighbors.push_back({j, weight});
            auto& back = supers_[static_cast<std::size_t>(j)].neighbors;
            for (auto& entry : back)
                if (entry.first == i) entry.first = fresh;
        } else {
            kept.push_back({j, weight});
        }
    }
    src.neighbors = std::move(kept);

    src.neighbors.push_back({fresh, w});
    node.neighbors.push_back({i, w});

    for (NodeId v : node.nodes) owner_[static_cast<std::size_t>(v)] = fresh;
    supers_.push_back(std::move(node));
    return fresh;
}

std::vector<PartitionTree::Component> PartitionTree::components_excluding(int i) const {
    std::vector<Component> out;
    std::vector<char> seen(static_cast<std::size_t>(super_count()), 0);
    seen[static_cast<std::size_t>(i)] = 1;
    for (auto& [start, w] : supers_[static_cast<std::size_t>(i)].neighbors) {
        (void)w;
        if (seen[static_cast<std::size_t>(start)]) continue;
        Component comp;
        comp.via_neighbor = start;
        std::queue<int> q;
        q.push(start);
        seen[static_cast<std::size_t>(start)] = 1;
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            const SuperNode& sn = supers_[static_cast<std::size_t>(x)];
            comp.nodes.insert(comp.nodes.end(), sn.nodes.begin(), sn.nodes.end());
            for (auto& [y, wy] : sn.neighbors) {
                (void)wy;
                if (!seen[static_cast<std::size_t>(y)]) {
                    seen[static_cast<std::size_t>(y)] = 1;
                    q.push(y);
                }
            }
        }
        out.push_back(std::move(comp));
    }
    return out;
}

CutTree PartitionTree::to_cut_tree(TreeKind kind, std::uint64_t source_hash) const {
    CutTree t;
    t.n = n_;
    t.kind = kind;
    t.source_hash = source_hash;
    for (int i = 0; i < super_count(); ++i) {
        const SuperNode& a = supers_[static_cast<std::size_t>(i)];
        if (!a.alive) continue;
        if (a.nodes.size() != 1)
            raise(ErrorCode::internal_error, "partition tree still has non-singletons");
        for (auto& [j, w] : a.neighbors) {
            if (j < i) continue; // each tree edge once
            const SuperNode& b = supers_[static_cast<std::size_t>(j)];
            t.edges.push_back({a.nodes[0], b.nodes[0], w});
        }
    }
    check_tree_shape(t);
    return t;
}

void PartitionTree::check_invariants() const {
    std::vector<char> covered(static_cast<std::size_t>(n_), 0);
    int live = 0;
    std::size_t tree_edges = 0;
    for (int i = 0; i < super_count(); ++i) {
        const SuperNode& s = supers_[static_cast<std::size_t>(i)];
        if (!s.alive) continue;
        ++live;
        tree_edges += s.neighbors.size();
        if (s.nodes.empty()) raise(ErrorCode::internal_error, "empty super-node");
        for (NodeId v : s.nodes) {
            if (covered[static_cast<std::size_t>(v)])
                raise(ErrorCode::internal_error, "super-nodes overlap");
            covered[static_cast<std::size_t>(v)] = 1;
            if (owner_[static_cast<std::size_t>(v)] != i)
                raise(ErrorCode::internal_error, "owner map out of sync");
        }
        for (auto& [j, w] : s.neighbors) {
            (void)w;
            if (!supers_[static_cast<std::size_t>(j)].alive)
                raise(ErrorCode::internal_error, "edge to dead super-node");
        }
    }
    for (int v = 0; v < n_; ++v)
        if (!covered[static_cast<std::size_t>(v)])
            raise(ErrorCode::internal_error, "super-nodes do not cover V");
    if (tree_edges != 2 * static_cast<std::size_t>(live - 1))
        raise(ErrorCode::internal_error, "intermediate structure is not a tree");
}

namespace {

// Builds the auxiliary graph for super-node i: every tree component hanging
// off i is contracted to one node. Returns the contraction plus the aux node
// id of each component.
struct AuxGraph {
    WeightedGraph graph;
    std::vector<NodeId> node_map;
    std::vector<std::pair<int, NodeId>> component_node; // (via_neighbor super id, aux id)
};

AuxGraph build_aux(const WeightedGraph& g, const PartitionTree& pt, int i) {
    std::vector<std::vector<NodeId>> parts;
    parts.push_back(pt.super(i).nodes);
    auto comps = pt.components_excluding(i);
    for (auto& c : comps) parts.push_back(c.nodes);

    ContractionResult cr = contract_supernodes(g, parts, 0);
    AuxGraph aux{std::move(cr.graph), std::move(cr.node_map), {}};
    for (auto& c : comps) {
        NodeId rep = c.nodes.front();
        aux.component_node.push_back({c.via_neighbor, aux.node_map[static_cast<std::size_t>(rep)]});
    }
    return aux;
}

} // namespace

CutTree build_gomory_hu(const WeightedGraph& g, const OracleFactory& factory,
                        PairPolicy policy) {
    PartitionTree pt(g.node_count());

    for (;;) {
        int target = -1;
        for (int i : pt.live_ids()) {
            if (pt.super(i).nodes.size() >= 2) {
                target = i;
                break;
            }
        }
        if (target < 0) break;

        const auto& nodes = pt.super(target).nodes;
        NodeId s, t;
        if (policy == PairPolicy::lowest_pair) {
            s = nodes[0];
            t = nodes[1];
        } else {
            s = nodes[nodes.size() - 2];
            t = nodes[nodes.size() - 1];
        }

        AuxGraph aux = build_aux(g, pt, target);
        OraclePtr oracle = factory(aux.graph);
        Cut cut = oracle->query_cut(aux.node_map[static_cast<std::size_t>(s)],
                                    aux.node_map[static_cast<std::size_t>(t)]);

        // t-side core nodes move to the fresh super-node
        std::vector<NodeId> moved;
        for (NodeId v : nodes)
            if (cut.side.test(aux.node_map[static_cast<std::size_t>(v)])) moved.push_back(v);

        std::vector<int> rewire;
        for (auto& [via, aux_id] : aux.component_node)
            if (cut.side.test(aux_id)) rewire.push_back(via);

        pt.split(target, moved, cut.value, rewire);
#ifndef NDEBUG
        pt.check_invariants();
#endif
    }

    return pt.to_cut_tree(TreeKind::cut_equivalent, g.content_hash());
}

CutTree build_gusfield(const WeightedGraph& g, const OraclePtr& oracle) {
    const int n = g.node_count();
    std::vector<NodeId> parent(static_cast<std::size_t>(n), 0);
    std::vector<Capacity> weight(static_cast<std::size_t>(n), Capacity(0));

    for (NodeId s = 1; s < n; ++s) {
        NodeId t = parent[static_cast<std::size_t>(s)];
        // side of s in a min (s,t) cut of the original graph
        Cut cut = oracle->query_cut(t, s);
        weight[static_cast<std::size_t>(s)] = cut.value;
        for (NodeId v = 0; v < n; ++v) {
            if (v == s) continue;
            if (parent[static_cast<std::size_t>(v)] == t && cut.side.test(v))
                parent[static_cast<std::size_t>(v)] = s;
        }
        // classic swap step keeps the parent structure consistent; when t is
        // the root, parent[t] = t sits on the t-side and the test is false
        NodeId pt_ = parent[static_cast<std::size_t>(t)];
        if (cut.side.test(pt_)) {
            parent[static_cast<std::size_t>(s)] = pt_;
            parent[static_cast<std::size_t>(t)] = s;
            std::swap(weight[static_cast<std::size_t>(s)],
                      weight[static_cast<std::size_t>(t)]);
        }
    }

    CutTree tree;
    tree.n = n;
    tree.kind = TreeKind::flow_equivalent;
    tree.source_hash = g.content_hash();
    for (NodeId v = 1; v < n; ++v)
        tree.edges.push_back({v, parent[static_cast<std::size_t>(v)],
                              weight[static_cast<std::size_t>(v)]});
    check_tree_shape(tree);
    return tree;
}

} // namespace mcq
