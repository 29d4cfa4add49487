#ifndef MCQ_GOMORY_HU_HPP
#define MCQ_GOMORY_HU_HPP

#include <vector>

#include "cut_tree.hpp"
#include "graph.hpp"
#include "oracle.hpp"

namespace mcq {

// Intermediate tree of super-nodes: the node sets partition V and the
// super-nodes form a tree with weighted edges. Shared by the classical
// Gomory-Hu builder and the batched expansion builder.
class PartitionTree {
public:
    struct SuperNode {
        std::vector<NodeId> nodes;
        std::vector<std::pair<int, Capacity>> neighbors; // (super-node id, weight)
        bool alive = true;
    };

    explicit PartitionTree(int n);

    int super_count() const { return static_cast<int>(supers_.size()); }
    const SuperNode& super(int i) const { return supers_[static_cast<std::size_t>(i)]; }
    int owner(NodeId v) const { return owner_[static_cast<std::size_t>(v)]; }
    int graph_nodes() const { return n_; }

    std::vector<int> live_ids() const;
    bool all_singletons() const;

    // Splits `moved` out of super-node i into a fresh super-node connected to
    // i by an edge of weight w; neighbors listed in `rewire` move with it.
    // Returns the new super-node id.
    int split(int i, const std::vector<NodeId>& moved, const Capacity& w,
              const std::vector<int>& rewire);

    // Node sets of the connected components of the tree after removing i,
    // keyed by the neighbor of i they hang off.
    struct Component {
        int via_neighbor;
        std::vector<NodeId> nodes;
    };
    std::vector<Component> components_excluding(int i) const;

    CutTree to_cut_tree(TreeKind kind, std::uint64_t source_hash) const;

    // Partition/tree invariants; raised as InternalError if broken.
    void check_invariants() const;

private:
    int n_;
    std::vector<SuperNode> supers_;
    std::vector<int> owner_;
};

enum class PairPolicy { lowest_pair, highest_pair };

// Classical Gomory-Hu: one super-node split per iteration, min cut found in
// the auxiliary graph that contracts each tree component hanging off the
// split super-node. The arbitrary pair is the two lowest-numbered nodes
// (policy selectable for the order-independence tests).
CutTree build_gomory_hu(const WeightedGraph& g, const OracleFactory& factory,
                        PairPolicy policy = PairPolicy::lowest_pair);

// Gusfield's variant: all n-1 queries on the original graph. Produces a
// flow-equivalent tree in general; cut-equivalent when min cuts are unique
// (e.g. perturbed inputs). Approximate oracles void the guarantee.
CutTree build_gusfield(const WeightedGraph& g, const OraclePtr& oracle);

} // namespace mcq

#endif
