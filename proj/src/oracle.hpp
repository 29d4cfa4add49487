#ifndef MCQ_ORACLE_HPP
#define MCQ_ORACLE_HPP

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>

#include "graph.hpp"

namespace mcq {

struct QueryStats {
    std::uint64_t cut_queries = 0;
    std::uint64_t value_queries = 0;
    std::uint64_t total_reported_edges = 0;
};

// The Min-Cut data structure abstraction: preprocess a graph once, then
// answer cut and value queries. Implementations are deterministic: identical
// (graph, seed, query) triples yield identical answers regardless of query
// order. query_cut(s, t) returns a cut whose side contains t.
class MinCutOracle {
public:
    virtual ~MinCutOracle() = default;

    virtual Cut query_cut(NodeId s, NodeId t) = 0;
    virtual Capacity query_value(NodeId s, NodeId t) = 0;
    virtual QueryStats stats() const = 0;
    virtual const WeightedGraph& graph() const = 0;
};

using OraclePtr = std::shared_ptr<MinCutOracle>;
using OracleFactory = std::function<OraclePtr(const WeightedGraph&)>;

// Exact oracle: delegates to the max-flow solver with the canonical t-side.
OraclePtr make_exact_oracle(const WeightedGraph& g);

// (1+eps)-approximate oracle. For each unordered pair it deterministically
// (by seed) answers either the exact cut or a different valid separating cut
// whose value is within factor (1+eps) of optimal, drawn from a pool of
// min cuts toward a pseudo-random sample of 2*log2(n) other nodes. Answers
// are consistent across repeats and across (s,t)/(t,s) orderings.
OraclePtr make_noisy_oracle(const WeightedGraph& g, Rational eps, std::uint64_t seed);

// Exact oracle backed by a prebuilt cut-equivalent tree: n-1 max-flow
// computations up front, then O(n + output) per query. Useful when many
// queries hit the same large graph.
OraclePtr make_tree_oracle(const WeightedGraph& g);

// Restriction wrapper: queries whose first endpoint differs from src are
// rejected with WrongSource; everything else delegates.
OraclePtr fixed_source_view(OraclePtr inner, NodeId src);

OracleFactory exact_oracle_factory();
OracleFactory noisy_oracle_factory(Rational eps, std::uint64_t seed);

} // namespace mcq

#endif
