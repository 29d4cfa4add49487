#include "graph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

#include "errors.hpp"

namespace mcq {

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            std::size_t pos = 0;
            std::int64_t num = std::stoll(s, &pos);
            if (pos != s.size()) raise(ErrorCode::parse_error, "bad rational '" + s + "'");
            return Rational(num, 1);
        }
        std::size_t pos = 0;
        std::int64_t num = std::stoll(s.substr(0, slash), &pos);
        if (pos != slash) raise(ErrorCode::parse_error, "bad rational '" + s + "'");
        std::int64_t den = std::stoll(s.substr(slash + 1), &pos);
        if (pos != s.size() - slash - 1) raise(ErrorCode::parse_error, "bad rational '" + s + "'");
        return Rational(num, den);
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        raise(ErrorCode::parse_error, "bad rational '" + s + "'");
    }
}

WeightedGraph::WeightedGraph(int n, std::vector<Edge> edges, int scale_exponent)
    : n_(n), scale_exponent_(scale_exponent) {
    if (n <= 0) raise(ErrorCode::invalid_input, "graph needs at least one node");

    std::map<std::pair<NodeId, NodeId>, Capacity> merged;
    for (const Edge& e : edges) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
            raise(ErrorCode::invalid_input, "edge endpoint out of range");
        if (e.u == e.v)
            raise(ErrorCode::invalid_input, "self-loops are not allowed");
        if (e.cap <= 0)
            raise(ErrorCode::invalid_input, "capacities must be strictly positive");
        auto key = std::minmax(e.u, e.v);
        merged[{key.first, key.second}] += e.cap;
    }
    edges_.reserve(merged.size());
    for (auto& [key, cap] : merged)
        edges_.push_back({key.first, key.second, std::move(cap)});

    incidence_.assign(static_cast<std::size_t>(n_), {});
    for (int id = 0; id < static_cast<int>(edges_.size()); ++id) {
        incidence_[static_cast<std::size_t>(edges_[static_cast<std::size_t>(id)].u)].push_back(id);
        incidence_[static_cast<std::size_t>(edges_[static_cast<std::size_t>(id)].v)].push_back(id);
    }

    if (n_ > 1) {
        // connectivity check; on failure name one node from each of two components
        std::vector<char> seen(static_cast<std::size_t>(n_), 0);
        std::queue<NodeId> q;
        q.push(0);
        seen[0] = 1;
        while (!q.empty()) {
            NodeId x = q.front();
            q.pop();
            for (int id : incidence_[static_cast<std::size_t>(x)]) {
                const Edge& e = edges_[static_cast<std::size_t>(id)];
                NodeId y = (e.u == x) ? e.v : e.u;
                if (!seen[static_cast<std::size_t>(y)]) {
                    seen[static_cast<std::size_t>(y)] = 1;
                    q.push(y);
                }
            }
        }
        for (int v = 0; v < n_; ++v) {
            if (!seen[static_cast<std::size_t>(v)]) {
                std::ostringstream os;
                os << "graph is disconnected: node " << (v + 1)
                   << " is not reachable from node 1";
                raise(ErrorCode::disconnected, os.str());
            }
        }
    }
}

Capacity WeightedGraph::total_capacity() const {
    Capacity t = 0;
    for (const Edge& e : edges_) t += e.cap;
    return t;
}

bool WeightedGraph::unit_capacity() const {
    for (const Edge& e : edges_)
        if (e.cap != 1) return false;
    return true;
}

std::uint64_t WeightedGraph::content_hash() const {
    std::ostringstream os;
    os << "p " << n_ << ' ' << edges_.size() << ' ' << scale_exponent_ << '\n';
    for (const Edge& e : edges_)
        os << e.u << ' ' << e.v << ' ' << e.cap.str() << '\n';
    std::uint64_t h = 1469598103934665603ULL;
    for (char c : os.str()) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

Capacity cut_value_of_side(const WeightedGraph& g, const NodeSet& side) {
    Capacity v = 0;
    for (const Edge& e : g.edges())
        if (side.test(e.u) != side.test(e.v)) v += e.cap;
    return v;
}

std::vector<int> crossing_edges_of_side(const WeightedGraph& g, const NodeSet& side) {
    std::vector<int> out;
    for (int id = 0; id < g.edge_count(); ++id) {
        const Edge& e = g.edge(id);
        if (side.test(e.u) != side.test(e.v)) out.push_back(id);
    }
    return out;
}

bool verify_cut(const WeightedGraph& g, const Cut& cut, NodeId s, NodeId t) {
    if (cut.side.universe() != g.node_count()) return false;
    if (cut.side.test(s) == cut.side.test(t)) return false;
    int c = cut.side.count();
    if (c == 0 || c == g.node_count()) return false;
    if (cut_value_of_side(g, cut.side) != cut.value) return false;
    std::vector<int> expect = crossing_edges_of_side(g, cut.side);
    std::vector<int> got = cut.crossing_edges;
    std::sort(got.begin(), got.end());
    return got == expect;
}

ContractionResult contract_supernodes(const WeightedGraph& g,
                                      const std::vector<std::vector<NodeId>>& parts,
                                      int keep) {
    const int n = g.node_count();
    if (keep < 0 || keep >= static_cast<int>(parts.size()))
        raise(ErrorCode::invalid_partition, "keep part id out of range");

    std::vector<int> owner(static_cast<std::size_t>(n), -1);
    for (int p = 0; p < static_cast<int>(parts.size()); ++p) {
        if (parts[static_cast<std::size_t>(p)].empty())
            raise(ErrorCode::invalid_partition, "empty part");
        for (NodeId v : parts[static_cast<std::size_t>(p)]) {
            if (v < 0 || v >= n)
                raise(ErrorCode::invalid_partition, "part member out of range");
            if (owner[static_cast<std::size_t>(v)] != -1)
                raise(ErrorCode::invalid_partition, "parts are not disjoint");
            owner[static_cast<std::size_t>(v)] = p;
        }
    }
    for (int v = 0; v < n; ++v)
        if (owner[static_cast<std::size_t>(v)] == -1)
            raise(ErrorCode::invalid_partition, "parts do not cover all nodes");

    std::vector<NodeId> node_map(static_cast<std::size_t>(n), -1);
    std::vector<NodeId> kept = parts[static_cast<std::size_t>(keep)];
    std::sort(kept.begin(), kept.end());
    int next = 0;
    for (NodeId v : kept) node_map[static_cast<std::size_t>(v)] = next++;
    for (int p = 0; p < static_cast<int>(parts.size()); ++p) {
        if (p == keep) continue;
        for (NodeId v : parts[static_cast<std::size_t>(p)])
            node_map[static_cast<std::size_t>(v)] = next;
        ++next;
    }

    std::vector<Edge> contracted;
    contracted.reserve(g.edges().size());
    for (const Edge& e : g.edges()) {
        NodeId cu = node_map[static_cast<std::size_t>(e.u)];
        NodeId cv = node_map[static_cast<std::size_t>(e.v)];
        if (cu == cv) continue;
        contracted.push_back({cu, cv, e.cap});
    }
    // WeightedGraph normalization merges the parallel edges
    return {WeightedGraph(next, std::move(contracted), g.scale_exponent()),
            std::move(node_map)};
}

WeightedGraph perturb(const WeightedGraph& g, std::uint64_t seed) {
    if (g.scale_exponent() != 0)
        raise(ErrorCode::double_scale, "graph is already perturbation-scaled");
    const int n = g.node_count();
    const Capacity scale = cap_pow(n, 10);
    const Capacity r_bound = cap_pow(n, 7);
    RngStream rng = RngStream(seed).derive("perturb");
    std::vector<Edge> edges;
    edges.reserve(g.edges().size());
    for (const Edge& e : g.edges()) {
        Capacity r = rng.uniform_capacity(r_bound);
        edges.push_back({e.u, e.v, e.cap * scale + r});
    }
    return WeightedGraph(n, std::move(edges), 10);
}

Capacity round_back(const Capacity& cap, int n) {
    return cap / cap_pow(n, 10);
}

} // namespace mcq
