#ifndef MCQ_APPROX_DS_HPP
#define MCQ_APPROX_DS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "cut_tree.hpp"
#include "graph.hpp"
#include "oracle.hpp"
#include "rng.hpp"

namespace mcq {

// Total order realizing "c(S) + i/n^2" without rationals: compare the exact
// base value, then the serial of the query that first produced the cut.
struct TieBrokenValue {
    Capacity base;
    std::uint64_t serial = 0;

    bool operator<(const TieBrokenValue& o) const {
        if (base != o.base) return base < o.base;
        return serial < o.serial;
    }
    bool operator==(const TieBrokenValue& o) const {
        return base == o.base && serial == o.serial;
    }
};

// Deduplicated store of cuts, each a node-side bitmap plus its exact value.
// Crossing edges are materialized lazily on first edge-level request.
class CutStore {
public:
    struct Entry {
        NodeSet side; // canonical: the side containing node 0
        Capacity value;
        std::uint64_t serial;
        mutable std::optional<std::vector<int>> crossing;
    };

    int insert(const NodeSet& side, const Capacity& value);
    const Entry& entry(int idx) const { return entries_[static_cast<std::size_t>(idx)]; }
    int size() const { return static_cast<int>(entries_.size()); }

    const std::vector<int>& crossing_edges(int idx, const WeightedGraph& g) const;

private:
    std::vector<Entry> entries_;
    std::vector<std::pair<std::uint64_t, int>> index_; // (side hash, entry id), sorted
};

struct ExpansionRecord {
    std::vector<NodeId> members;       // V', ascending
    NodeId pivot = -1;
    int depth = 0;
    // parallel to members; cut = -1 for the pivot (it has no assigned cut)
    std::vector<int> cut_of;           // index into the cut store (array A)
    std::vector<TieBrokenValue> value_of;    // tie-broken value of that cut (array A)
    std::vector<int> part_of;          // array B: 0 = V''_big, 1.. = f-parts
    std::vector<int> child_record;     // per part id; -1 when the part is a singleton
    int pivot_retries = 0;
};

class ApproxMinCutDS {
public:
    int n = 0;
    Rational eps;
    std::uint64_t seed = 0;
    int depth = 0;
    std::uint64_t source_hash = 0;
    CutStore store;
    std::vector<ExpansionRecord> records;
    int root = -1;

    struct Answer {
        int cut_index;
        TieBrokenValue value;
    };

    // Descends via the B arrays to the record separating s and t, then returns
    // the smaller-valued stored cut that separates them.
    Answer query(NodeId s, NodeId t) const;
};

// Sparse graph accumulated during the build whose maximum spanning tree is a
// (1+eps)^3-approximate flow-equivalent tree. Stored edge weights are base
// cut values; every weight carries the implicit factor (1+eps).
struct FlowEmulator {
    int n = 0;
    Rational eps;
    struct HEdge {
        NodeId u;
        NodeId v;
        Capacity base;
    };
    std::vector<HEdge> edges;
};

struct ApproxBuildOptions {
    // replace each S_u by the connected component of u in G minus the cut
    // edges; matches the unweighted fast path and is enabled automatically
    // for unit-capacity inputs
    std::optional<bool> refine_cuts;
    int pivot_budget_factor = 40;
};

struct ApproxDepthStats {
    std::uint64_t cut_queries = 0;
    std::uint64_t crossing_edges = 0; // total over all cuts examined this depth
    int expansions = 0;
    int failed_pivots = 0;
};

struct ApproxBuildAudit {
    std::vector<ApproxDepthStats> depths;
    std::uint64_t total_cut_queries = 0;
    int store_size = 0;
    int recursion_depth = 0;
};

struct ApproxBuildResult {
    ApproxMinCutDS ds;
    FlowEmulator emulator;
    ApproxBuildAudit audit;
};

// Recursive expansion operations with the f/g reassignment. All queries go to
// the oracle on the original graph; there are no contractions here.
ApproxBuildResult build_approx_ds(const WeightedGraph& g, const OraclePtr& oracle,
                                  Rational eps, std::uint64_t seed,
                                  const ApproxBuildOptions& opts = {});

// Maximum spanning tree of a complete all-pairs value matrix
// (Kruskal, exact comparisons). Requires a symmetric positive matrix.
CutTree flow_equivalent_from_complete(const std::vector<std::vector<Capacity>>& values);

// Maximum spanning tree of the flow emulator. Tree edge weights are the base
// cut values (the represented emulator weight is (1+eps) times that, kept
// implicit so everything stays in integers; with eps = 0 they coincide). The
// emulator of a completed build always connects V; a disconnected input
// signals a build bug.
CutTree flow_equivalent_from_emulator(const FlowEmulator& h);

} // namespace mcq

#endif
