#include "ultrametric.hpp"

#include <algorithm>
#include <set>

#include "errors.hpp"

namespace mcq {

int RepresentingTree::new_leaf(int point) {
    Node node;
    node.leaf = true;
    node.point = point;
    int idx = static_cast<int>(nodes.size());
    nodes.push_back(std::move(node));
    if (point >= static_cast<int>(leaf_of_point.size()))
        leaf_of_point.resize(static_cast<std::size_t>(point) + 1, -1);
    leaf_of_point[static_cast<std::size_t>(point)] = idx;
    return idx;
}

int RepresentingTree::new_internal(Label label) {
    Node node;
    node.label = std::move(label);
    int idx = static_cast<int>(nodes.size());
    nodes.push_back(std::move(node));
    return idx;
}

Label lca_label(const RepresentingTree& t, int u, int v) {
    if (u == v) raise(ErrorCode::invalid_query, "identical leaves");
    std::vector<char> on_path(t.nodes.size(), 0);
    for (int x = t.leaf_of_point[static_cast<std::size_t>(u)]; x != -1;
         x = t.nodes[static_cast<std::size_t>(x)].parent)
        on_path[static_cast<std::size_t>(x)] = 1;
    for (int x = t.leaf_of_point[static_cast<std::size_t>(v)]; x != -1;
         x = t.nodes[static_cast<std::size_t>(x)].parent) {
        if (on_path[static_cast<std::size_t>(x)]) {
            if (t.nodes[static_cast<std::size_t>(x)].leaf)
                raise(ErrorCode::internal_error, "leaf cannot be an ancestor");
            return t.nodes[static_cast<std::size_t>(x)].label;
        }
    }
    raise(ErrorCode::internal_error, "leaves share no ancestor");
}

void check_representing_tree(const RepresentingTree& t) {
    std::vector<Label> labels;
    for (int i = 0; i < static_cast<int>(t.nodes.size()); ++i) {
        const auto& node = t.nodes[static_cast<std::size_t>(i)];
        if (node.leaf) {
            if (!node.children.empty())
                raise(ErrorCode::ultrametric_violation, "leaf with children");
            continue;
        }
        if (node.children.size() < 2)
            raise(ErrorCode::ultrametric_violation, "internal node with fewer than 2 children");
        labels.push_back(node.label);
        for (int c : node.children) {
            const auto& child = t.nodes[static_cast<std::size_t>(c)];
            if (child.parent != i)
                raise(ErrorCode::internal_error, "parent pointer out of sync");
            if (!child.leaf && !(child.label < node.label))
                raise(ErrorCode::ultrametric_violation,
                      "labels must strictly decrease away from the root");
        }
    }
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
        raise(ErrorCode::ultrametric_violation, "duplicate internal label");
}

namespace {

struct Recovery {
    DistanceOracle& oracle;
    RepresentingTree& tree;
    int total_points;
    int pivot_budget;
    RecoveryStats* stats;

    // Returns the root node index of the subtree representing `pts`.
    int run(std::vector<int> pts, RngStream rng) {
        const int np = static_cast<int>(pts.size());
        if (np == 1) return tree.new_leaf(pts[0]);
        if (stats) stats->instances += 1;

        // order[0] is conceptually q_1 = p at distance 0
        std::vector<int> order;
        std::vector<Label> dist_of; // parallel to order, dist to pivot
        bool ok = false;
        for (int attempt = 0; attempt < pivot_budget && !ok; ++attempt) {
            if (stats) stats->pivot_attempts += 1;
            int p = pts[static_cast<std::size_t>(
                rng.uniform(static_cast<std::uint64_t>(np)))];
            std::vector<std::pair<Label, int>> by_dist;
            by_dist.reserve(static_cast<std::size_t>(np) - 1);
            for (int q : pts)
                if (q != p) by_dist.push_back({oracle.dist(p, q), q});
            std::sort(by_dist.begin(), by_dist.end(),
                      [](const auto& a, const auto& b) {
                          if (a.first != b.first) return a.first < b.first;
                          return a.second < b.second; // stable on equal distances
                      });
            order.clear();
            dist_of.clear();
            order.push_back(p);
            dist_of.push_back(Label(0));
            for (auto& [d, q] : by_dist) {
                order.push_back(q);
                dist_of.push_back(d);
            }
            // pivot succeeds when dist(q_{ceil(n'/4)}, p) < dist(q_{ceil(n'/2)+1}, p)
            int i1 = (np + 3) / 4;
            int i2 = (np + 1) / 2 + 1;
            ok = dist_of[static_cast<std::size_t>(i1 - 1)] <
                 dist_of[static_cast<std::size_t>(i2 - 1)];
        }
        if (!ok) {
            // Exhaustion is overwhelmingly a label-multiplicity problem, not
            // bad luck. Certify by paying the quadratic queries: an induced
            // sub-ultrametric of a valid instance has at least |pts|-1
            // distinct distances.
            std::set<Label> distinct;
            for (std::size_t i = 0; i < pts.size(); ++i)
                for (std::size_t j = i + 1; j < pts.size(); ++j)
                    distinct.insert(oracle.dist(pts[i], pts[j]));
            if (static_cast<int>(distinct.size()) < np - 1)
                raise(ErrorCode::ultrametric_violation,
                      "fewer than n'-1 distinct labels in the current instance");
            raise(ErrorCode::pivot_budget_exhausted,
                  "no pivot satisfied the quartile condition");
        }

        // largest split index s in [ceil(n'/4), ceil(n'/2)] with a strict
        // distance increase at s -> s+1
        int lo = (np + 3) / 4;
        int hi = (np + 1) / 2;
        int split = -1;
        for (int s = hi; s >= lo; --s) {
            if (dist_of[static_cast<std::size_t>(s - 1)] <
                dist_of[static_cast<std::size_t>(s)]) {
                split = s;
                break;
            }
        }
        if (split < 0)
            raise(ErrorCode::ultrametric_violation,
                  "no valid split index despite pivot success");

        Label join_label = dist_of[static_cast<std::size_t>(split)];

        std::vector<int> low(order.begin(), order.begin() + split);
        std::vector<int> high(order.begin() + split, order.end());
        int boundary_point = high.front(); // q_{s+1}

        int low_root = run(std::move(low), rng.derive("low"));
        int high_root = run(std::move(high), rng.derive("high"));

        return splice(low_root, high_root, boundary_point, join_label);
    }

    // Creates a node labeled `join_label` on the boundary-leaf-to-root path of
    // the high tree, immediately above the last node with a smaller label, and
    // hangs the low tree under it.
    int splice(int low_root, int high_root, int boundary_point, const Label& join_label) {
        int z = tree.leaf_of_point[static_cast<std::size_t>(boundary_point)];
        // climb while the parent's label is still smaller than the new label
        while (tree.nodes[static_cast<std::size_t>(z)].parent != -1) {
            int par = tree.nodes[static_cast<std::size_t>(z)].parent;
            if (tree.nodes[static_cast<std::size_t>(par)].label < join_label)
                z = par;
            else
                break;
        }
        int parent = tree.nodes[static_cast<std::size_t>(z)].parent;
        if (parent != -1 &&
            tree.nodes[static_cast<std::size_t>(parent)].label == join_label)
            raise(ErrorCode::ultrametric_violation,
                  "join label collides with an existing internal label");

        int joint = tree.new_internal(join_label);
        if (parent != -1) {
            auto& siblings = tree.nodes[static_cast<std::size_t>(parent)].children;
            std::replace(siblings.begin(), siblings.end(), z, joint);
        }
        tree.nodes[static_cast<std::size_t>(joint)].parent = parent;
        tree.nodes[static_cast<std::size_t>(joint)].children = {z, low_root};
        tree.nodes[static_cast<std::size_t>(z)].parent = joint;
        tree.nodes[static_cast<std::size_t>(low_root)].parent = joint;

        // when z was the high root (all labels below the new one), the joint
        // becomes the root of the combined tree
        return parent == -1 ? joint : high_root;
    }
};

} // namespace

RepresentingTree recover_representing_tree(DistanceOracle& oracle, int n, RngStream rng,
                                           int pivot_budget_factor, RecoveryStats* stats) {
    if (n <= 0) raise(ErrorCode::invalid_input, "need at least one point");
    if (oracle.points() < n) raise(ErrorCode::invalid_input, "oracle too small");

    int log2n = 1;
    while ((1 << log2n) < std::max(n, 2)) ++log2n;

    RepresentingTree tree;
    tree.n_points = n;
    tree.leaf_of_point.assign(static_cast<std::size_t>(n), -1);

    std::vector<int> pts(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pts[static_cast<std::size_t>(i)] = i;

    Recovery rec{oracle, tree, n, pivot_budget_factor * log2n, stats};
    tree.root = rec.run(std::move(pts), rng.derive("recover"));

    if (n >= 2) check_representing_tree(tree);
    return tree;
}

namespace {

// Post-order style path assembly: each subtree yields a path; two sibling
// paths are joined end-to-start by an edge carrying their parent's label.
struct PathBuild {
    const RepresentingTree& t;
    std::vector<TreeEdge>& edges;

    std::pair<int, int> build(int node) { // returns (head point, tail point)
        const auto& nd = t.nodes[static_cast<std::size_t>(node)];
        if (nd.leaf) return {nd.point, nd.point};
        if (nd.children.size() != 2)
            raise(ErrorCode::non_binary_tree, "path construction needs a binary tree");
        auto [lh, lt] = build(nd.children[0]);
        auto [rh, rt] = build(nd.children[1]);
        edges.push_back({lt, rh, nd.label});
        return {lh, rt};
    }
};

} // namespace

CutTree flow_equivalent_path_from_tree(const RepresentingTree& t) {
    // flow orientation: labels grow away from the root
    for (int i = 0; i < static_cast<int>(t.nodes.size()); ++i) {
        const auto& nd = t.nodes[static_cast<std::size_t>(i)];
        if (nd.leaf) continue;
        for (int c : nd.children) {
            const auto& child = t.nodes[static_cast<std::size_t>(c)];
            if (!child.leaf && !(child.label > nd.label))
                raise(ErrorCode::invalid_input,
                      "labels are not in max-flow orientation");
        }
    }

    CutTree path;
    path.n = t.n_points;
    path.kind = TreeKind::flow_equivalent;
    if (t.n_points >= 2) {
        PathBuild pb{t, path.edges};
        pb.build(t.root);
        check_tree_shape(path);
    }
    return path;
}

void invert_labels(RepresentingTree& t, const Capacity& m) {
    for (auto& nd : t.nodes)
        if (!nd.leaf) nd.label = m - nd.label;
}

MaxFlowDistanceAdapter::MaxFlowDistanceAdapter(const WeightedGraph& g, OraclePtr oracle)
    : n_(g.node_count()), m_(g.total_capacity() + 1), oracle_(std::move(oracle)) {}

Label MaxFlowDistanceAdapter::dist(int u, int v) {
    if (u == v) raise(ErrorCode::invalid_query, "identical points");
    ++queries_;
    return m_ - oracle_->query_value(u, v);
}

namespace {

class MatrixDistanceOracle : public DistanceOracle {
public:
    explicit MatrixDistanceOracle(std::vector<std::vector<Label>> matrix)
        : matrix_(std::move(matrix)) {}

    Label dist(int u, int v) override {
        if (u == v) raise(ErrorCode::invalid_query, "identical points");
        ++queries_;
        return matrix_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
    }
    int points() const override { return static_cast<int>(matrix_.size()); }
    std::uint64_t query_count() const override { return queries_; }

private:
    std::vector<std::vector<Label>> matrix_;
    std::uint64_t queries_ = 0;
};

} // namespace

std::unique_ptr<DistanceOracle> make_matrix_distance_oracle(
    std::vector<std::vector<Label>> matrix) {
    return std::make_unique<MatrixDistanceOracle>(std::move(matrix));
}

SynthesizedUltrametric synthesize_ultrametric(int n, RngStream rng) {
    if (n < 1) raise(ErrorCode::invalid_input, "need at least one point");

    // n-1 distinct labels, ascending; merge order gives the label order
    std::set<std::uint64_t> chosen;
    while (static_cast<int>(chosen.size()) < n - 1)
        chosen.insert(rng.uniform(1'000'000'000ULL) + 1);
    std::vector<Label> labels(chosen.begin(), chosen.end());

    SynthesizedUltrametric out;
    out.tree.n_points = n;
    out.tree.leaf_of_point.assign(static_cast<std::size_t>(n), -1);

    std::vector<int> active;
    for (int i = 0; i < n; ++i) active.push_back(out.tree.new_leaf(i));

    for (int k = 0; k < n - 1; ++k) {
        std::uint64_t a = rng.uniform(static_cast<std::uint64_t>(active.size()));
        std::uint64_t b = rng.uniform(static_cast<std::uint64_t>(active.size() - 1));
        if (b >= a) ++b;
        int ia = active[static_cast<std::size_t>(a)];
        int ib = active[static_cast<std::size_t>(b)];
        int parent = out.tree.new_internal(labels[static_cast<std::size_t>(k)]);
        out.tree.nodes[static_cast<std::size_t>(parent)].children = {ia, ib};
        out.tree.nodes[static_cast<std::size_t>(ia)].parent = parent;
        out.tree.nodes[static_cast<std::size_t>(ib)].parent = parent;
        // replace the two merged clusters by their parent
        if (a < b) std::swap(a, b);
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(a));
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(b));
        active.push_back(parent);
    }
    out.tree.root = active.front();

    std::vector<std::vector<Label>> matrix(static_cast<std::size_t>(n),
                                           std::vector<Label>(static_cast<std::size_t>(n), 0));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            Label l = (n >= 2) ? lca_label(out.tree, u, v) : Label(0);
            matrix[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = l;
            matrix[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = l;
        }
    out.oracle = make_matrix_distance_oracle(std::move(matrix));
    return out;
}

} // namespace mcq
