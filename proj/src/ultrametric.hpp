#ifndef MCQ_ULTRAMETRIC_HPP
#define MCQ_ULTRAMETRIC_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "cut_tree.hpp"
#include "graph.hpp"
#include "oracle.hpp"
#include "rng.hpp"

namespace mcq {

using Label = Capacity;

// Symmetric distance oracle over points [0, n). Distances must satisfy the
// strong triangle inequality; recovery additionally requires exactly n-1
// distinct labels across all pairs (violations surface as errors, not wrong
// trees).
class DistanceOracle {
public:
    virtual ~DistanceOracle() = default;
    virtual Label dist(int u, int v) = 0;
    virtual int points() const = 0;
    virtual std::uint64_t query_count() const = 0;
};

// Rooted tree whose leaves are the n points; internal nodes carry labels that
// strictly decrease away from the root. lbl(LCA(u,v)) realizes the metric.
struct RepresentingTree {
    struct Node {
        int parent = -1;
        std::vector<int> children;
        bool leaf = false;
        int point = -1; // leaf payload
        Label label;    // internal nodes only
    };

    std::vector<Node> nodes;
    int root = -1;
    int n_points = 0;
    std::vector<int> leaf_of_point; // point id -> node index

    int new_leaf(int point);
    int new_internal(Label label);
};

// Label at the lowest common ancestor of two leaves (plain parent-pointer
// walk; fine at this scale).
Label lca_label(const RepresentingTree& t, int u, int v);

// Structural checks: binary internal nodes, strictly decreasing labels.
void check_representing_tree(const RepresentingTree& t);

struct RecoveryStats {
    std::uint64_t pivot_attempts = 0;
    std::uint64_t instances = 0; // recursion nodes that needed a pivot
};

// Randomized divide and conquer: sort by distance to a random pivot, retry
// until the quartile condition holds, split, recurse, then splice the small
// tree under a fresh node on the q_{s+1}-to-root path.
RepresentingTree recover_representing_tree(DistanceOracle& oracle, int n, RngStream rng,
                                           int pivot_budget_factor = 40,
                                           RecoveryStats* stats = nullptr);

// Path-shaped flow-equivalent tree from a binary representing tree whose
// labels are in max-flow orientation (larger = more connected, so labels
// increase away from the root). For every pair the path-min weight equals
// the LCA label.
CutTree flow_equivalent_path_from_tree(const RepresentingTree& t);

// Flips distance-oriented labels l into M - l (and back); the adapter below
// picks M = 1 + total edge capacity.
void invert_labels(RepresentingTree& t, const Capacity& m);

// Distance oracle over max-flow values: dist(u,v) = M - value(u,v). Order
// reversing and injective on values, hence an ultrametric with n-1 distinct
// labels when the graph is perturbed.
class MaxFlowDistanceAdapter : public DistanceOracle {
public:
    MaxFlowDistanceAdapter(const WeightedGraph& g, OraclePtr oracle);

    Label dist(int u, int v) override;
    int points() const override { return n_; }
    std::uint64_t query_count() const override { return queries_; }

    const Capacity& offset() const { return m_; }

private:
    int n_;
    Capacity m_;
    OraclePtr oracle_;
    std::uint64_t queries_ = 0;
};

// Oracles used by tests and the synthesized-ultrametric corpus.
std::unique_ptr<DistanceOracle> make_matrix_distance_oracle(
    std::vector<std::vector<Label>> matrix);

// Ultrametric synthesized from a sequence of cluster merges: merge k gets the
// k-th smallest of n-1 distinct labels, yielding a binary representing tree.
struct SynthesizedUltrametric {
    RepresentingTree tree;
    std::unique_ptr<DistanceOracle> oracle;
};
SynthesizedUltrametric synthesize_ultrametric(int n, RngStream rng);

} // namespace mcq

#endif
