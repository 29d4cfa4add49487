#include "oracle.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "cut_tree.hpp"
#include "errors.hpp"
#include "gomory_hu.hpp"
#include "maxflow.hpp"
#include "rng.hpp"

namespace mcq {

namespace {

class StatsMixin {
public:
    QueryStats snapshot() const {
        QueryStats s;
        s.cut_queries = cut_queries_.load();
        s.value_queries = value_queries_.load();
        s.total_reported_edges = reported_edges_.load();
        return s;
    }

protected:
    void count_cut(std::size_t reported) {
        cut_queries_.fetch_add(1);
        reported_edges_.fetch_add(reported);
    }
    void count_value() { value_queries_.fetch_add(1); }

private:
    mutable std::atomic<std::uint64_t> cut_queries_{0};
    mutable std::atomic<std::uint64_t> value_queries_{0};
    mutable std::atomic<std::uint64_t> reported_edges_{0};
};

class ExactOracle : public MinCutOracle, private StatsMixin {
public:
    explicit ExactOracle(const WeightedGraph& g) : g_(g), solver_(g_) {}

    Cut query_cut(NodeId s, NodeId t) override {
        std::lock_guard<std::mutex> lock(mu_);
        Cut c = solver_.min_cut(s, t);
        count_cut(c.crossing_edges.size());
        return c;
    }

    Capacity query_value(NodeId s, NodeId t) override {
        std::lock_guard<std::mutex> lock(mu_);
        count_value();
        return solver_.max_flow_value(s, t);
    }

    QueryStats stats() const override { return snapshot(); }
    const WeightedGraph& graph() const override { return g_; }

private:
    WeightedGraph g_;
    MaxFlowSolver solver_; // per-call scratch only, guarded for concurrent use
    std::mutex mu_;
};

// Orients a stored bipartition so that `side` contains t.
Cut orient_cut(const NodeSet& side_of_hi, const Capacity& value,
               const std::vector<int>& crossing, NodeId t) {
    Cut c;
    c.side = side_of_hi.test(t) ? side_of_hi : side_of_hi.complement();
    c.value = value;
    c.crossing_edges = crossing;
    c.designated = t;
    return c;
}

class NoisyOracle : public MinCutOracle, private StatsMixin {
public:
    NoisyOracle(const WeightedGraph& g, Rational eps, std::uint64_t seed)
        : g_(g), eps_(eps), seed_(seed), solver_(g_) {}

    Cut query_cut(NodeId s, NodeId t) override {
        std::lock_guard<std::mutex> lock(mu_);
        const Stored& st = answer_for_pair(s, t);
        Cut c = orient_cut(st.side_of_hi, st.value, st.crossing, t);
        count_cut(c.crossing_edges.size());
        return c;
    }

    Capacity query_value(NodeId s, NodeId t) override {
        std::lock_guard<std::mutex> lock(mu_);
        count_value();
        return answer_for_pair(s, t).value;
    }

    QueryStats stats() const override { return snapshot(); }
    const WeightedGraph& graph() const override { return g_; }

private:
    struct Stored {
        NodeSet side_of_hi; // side containing the larger node id
        Capacity value;
        std::vector<int> crossing;
    };

    // Pure function of (graph, seed, pair); the cache only avoids recompute,
    // so answers are independent of query order.
    const Stored& answer_for_pair(NodeId s, NodeId t) {
        if (s == t) raise(ErrorCode::invalid_query, "identical endpoints");
        NodeId a = std::min(s, t), b = std::max(s, t);
        auto it = cache_.find({a, b});
        if (it != cache_.end()) return it->second;

        Cut exact = solver_.min_cut(a, b); // side contains b
        Stored st{exact.side, exact.value, exact.crossing_edges};

        if (!eps_.is_zero()) {
            RngStream rng = RngStream(seed_)
                                .derive("noisy-oracle")
                                .derive(static_cast<std::uint64_t>(a) * 1000003ULL +
                                        static_cast<std::uint64_t>(b));
            if (rng.coin()) {
                int n = g_.node_count();
                int samples = 2 * (64 - static_cast<int>(std::countl_zero(
                                            static_cast<std::uint64_t>(std::max(n, 2)))));
                for (int k = 0; k < samples; ++k) {
                    // candidates alternate between min cuts toward sampled
                    // nodes and single-node flips of the exact bipartition;
                    // the flips model answers that are optimal for no pair,
                    // which is what real approximate solvers return
                    NodeId x = static_cast<NodeId>(rng.uniform(static_cast<std::uint64_t>(n)));
                    bool flip = rng.coin();
                    NodeSet side;
                    if (flip) {
                        if (x == a || x == b) continue;
                        side = exact.side;
                        if (side.test(x)) side.reset(x);
                        else side.set(x);
                    } else {
                        if (x == a) continue;
                        side = solver_.min_cut(a, x).side;
                    }
                    // must separate the queried pair, stay within (1+eps) of
                    // optimal, and actually differ from the exact answer
                    if (side.test(a) == side.test(b)) continue;
                    Capacity value = cut_value_of_side(g_, side);
                    if (!eps_.le_scaled(value, exact.value)) continue;
                    NodeSet canon = side.canonical_bipartition_side();
                    if (canon == exact.side.canonical_bipartition_side()) continue;
                    NodeSet hi_side = side.test(b) ? side : side.complement();
                    std::vector<int> crossing = crossing_edges_of_side(g_, hi_side);
                    st = Stored{std::move(hi_side), std::move(value), std::move(crossing)};
                    break;
                }
            }
        }
        auto [ins, ok] = cache_.emplace(std::make_pair(a, b), std::move(st));
        (void)ok;
        return ins->second;
    }

    WeightedGraph g_;
    Rational eps_;
    std::uint64_t seed_;
    MaxFlowSolver solver_;
    std::map<std::pair<NodeId, NodeId>, Stored> cache_;
    std::mutex mu_;
};

class TreeOracle : public MinCutOracle, private StatsMixin {
public:
    explicit TreeOracle(const WeightedGraph& g)
        : g_(g), tree_(build_gomory_hu(g_, exact_oracle_factory())) {}

    Cut query_cut(NodeId s, NodeId t) override {
        Bipartition bp = tree_cut_bipartition(tree_, s, t);
        Cut c;
        c.side = std::move(bp.side);
        c.designated = t;
        c.crossing_edges = crossing_edges_of_side(g_, c.side);
        c.value = 0;
        for (int id : c.crossing_edges) c.value += g_.edge(id).cap;
        count_cut(c.crossing_edges.size());
        return c;
    }

    Capacity query_value(NodeId s, NodeId t) override {
        count_value();
        return tree_max_flow_value(tree_, s, t);
    }

    QueryStats stats() const override { return snapshot(); }
    const WeightedGraph& graph() const override { return g_; }

private:
    WeightedGraph g_;
    CutTree tree_;
};

class FixedSourceView : public MinCutOracle {
public:
    FixedSourceView(OraclePtr inner, NodeId src) : inner_(std::move(inner)), src_(src) {}

    Cut query_cut(NodeId s, NodeId t) override {
        check(s);
        return inner_->query_cut(s, t);
    }
    Capacity query_value(NodeId s, NodeId t) override {
        check(s);
        return inner_->query_value(s, t);
    }
    QueryStats stats() const override { return inner_->stats(); }
    const WeightedGraph& graph() const override { return inner_->graph(); }

private:
    void check(NodeId s) const {
        if (s != src_)
            raise(ErrorCode::wrong_source,
                  "query source " + std::to_string(s) + " differs from fixed source " +
                      std::to_string(src_));
    }

    OraclePtr inner_;
    NodeId src_;
};

} // namespace

OraclePtr make_exact_oracle(const WeightedGraph& g) {
    return std::make_shared<ExactOracle>(g);
}

OraclePtr make_noisy_oracle(const WeightedGraph& g, Rational eps, std::uint64_t seed) {
    return std::make_shared<NoisyOracle>(g, eps, seed);
}

OraclePtr make_tree_oracle(const WeightedGraph& g) {
    return std::make_shared<TreeOracle>(g);
}

OraclePtr fixed_source_view(OraclePtr inner, NodeId src) {
    return std::make_shared<FixedSourceView>(std::move(inner), src);
}

OracleFactory exact_oracle_factory() {
    return [](const WeightedGraph& g) { return make_exact_oracle(g); };
}

OracleFactory noisy_oracle_factory(Rational eps, std::uint64_t seed) {
    return [eps, seed](const WeightedGraph& g) { return make_noisy_oracle(g, eps, seed); };
}

} // namespace mcq
