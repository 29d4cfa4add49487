#include <doctest.h>

#include <cmath>

#include "errors.hpp"
#include "generators.hpp"
#include "gomory_hu.hpp"
#include "maxflow.hpp"
#include "oracle.hpp"
#include "ultrametric.hpp"

using namespace mcq;

TEST_CASE("three points: unique shape from LCA labels") {
    // d(a,b)=1, d(a,c)=d(b,c)=2
    std::vector<std::vector<Label>> m = {{Label(0), Label(1), Label(2)},
                                         {Label(1), Label(0), Label(2)},
                                         {Label(2), Label(2), Label(0)}};
    auto oracle = make_matrix_distance_oracle(m);
    RepresentingTree t = recover_representing_tree(*oracle, 3, RngStream(1));
    CHECK(lca_label(t, 0, 1) == 1);
    CHECK(lca_label(t, 0, 2) == 2);
    CHECK(lca_label(t, 1, 2) == 2);
    const auto& root = t.nodes[static_cast<std::size_t>(t.root)];
    CHECK(root.label == 2);
    CHECK(root.children.size() == 2);
}

TEST_CASE("two points") {
    std::vector<std::vector<Label>> m = {{Label(0), Label(7)}, {Label(7), Label(0)}};
    auto oracle = make_matrix_distance_oracle(m);
    RepresentingTree t = recover_representing_tree(*oracle, 2, RngStream(4));
    CHECK(lca_label(t, 0, 1) == 7);
}

TEST_CASE("synthesized ultrametrics recover exactly on all pairs") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        int n = 2 + static_cast<int>(RngStream(seed).uniform(60));
        auto synth = synthesize_ultrametric(n, RngStream(seed).derive("synth"));
        RepresentingTree rec =
            recover_representing_tree(*synth.oracle, n, RngStream(seed).derive("rec"));
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                CHECK(lca_label(rec, u, v) == lca_label(synth.tree, u, v));
    }
}

TEST_CASE("lca_label equals naive ancestor-set intersection") {
    auto synth = synthesize_ultrametric(40, RngStream(17));
    const RepresentingTree& t = synth.tree;
    auto naive = [&](int u, int v) {
        std::set<int> anc;
        for (int x = t.leaf_of_point[static_cast<std::size_t>(u)]; x != -1;
             x = t.nodes[static_cast<std::size_t>(x)].parent)
            anc.insert(x);
        for (int x = t.leaf_of_point[static_cast<std::size_t>(v)]; x != -1;
             x = t.nodes[static_cast<std::size_t>(x)].parent)
            if (anc.count(x)) return t.nodes[static_cast<std::size_t>(x)].label;
        return Label(-1);
    };
    for (int u = 0; u < 40; ++u)
        for (int v = u + 1; v < 40; ++v) CHECK(lca_label(t, u, v) == naive(u, v));
    CHECK_THROWS_AS(lca_label(t, 3, 3), Error);
}

TEST_CASE("query budget stays within 64 n log2 n and labels decrease") {
    for (std::uint64_t seed = 30; seed <= 40; ++seed) {
        int n = 50 + static_cast<int>(RngStream(seed).uniform(150));
        auto synth = synthesize_ultrametric(n, RngStream(seed).derive("synth"));
        RepresentingTree rec =
            recover_representing_tree(*synth.oracle, n, RngStream(seed).derive("rec"));
        double budget = 64.0 * n * std::log2(std::max(n, 2));
        CHECK(static_cast<double>(synth.oracle->query_count()) <= budget);
        check_representing_tree(rec); // monotone labels, binary, distinct
    }
}

TEST_CASE("pivot success rate: mean attempts per instance stay under 4") {
    RecoveryStats stats;
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
        int n = 8 + static_cast<int>(RngStream(seed).uniform(40));
        auto synth = synthesize_ultrametric(n, RngStream(seed).derive("s"));
        recover_representing_tree(*synth.oracle, n, RngStream(seed).derive("r"), 40, &stats);
    }
    REQUIRE(stats.instances > 0);
    // success probability is at least 1/4 per attempt, so the mean number of
    // attempts per recursion instance is below 4
    CHECK(stats.pivot_attempts < 4 * stats.instances);
}

TEST_CASE("duplicate-label inputs raise a controlled error") {
    // all pairwise distances equal: 1 label instead of n-1
    const int n = 6;
    std::vector<std::vector<Label>> m(static_cast<std::size_t>(n),
                                      std::vector<Label>(static_cast<std::size_t>(n), Label(5)));
    for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 0;
    auto oracle = make_matrix_distance_oracle(m);
    CHECK_THROWS_AS(recover_representing_tree(*oracle, n, RngStream(3)), Error);
    try {
        auto o2 = make_matrix_distance_oracle(m);
        recover_representing_tree(*o2, n, RngStream(3));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ultrametric_violation);
    }
}

TEST_CASE("flow path construction: base cases and pair property") {
    // n = 2: single edge carrying the root label
    {
        std::vector<std::vector<Label>> m = {{Label(0), Label(3)}, {Label(3), Label(0)}};
        auto oracle = make_matrix_distance_oracle(m);
        RepresentingTree t = recover_representing_tree(*oracle, 2, RngStream(9));
        invert_labels(t, Label(10)); // flow orientation
        CutTree path = flow_equivalent_path_from_tree(t);
        CHECK(path.edges.size() == 1);
        CHECK(path.edges[0].weight == 7);
    }

    // synthesized trees: all-pairs path-min equals the LCA label
    for (std::uint64_t seed = 50; seed <= 56; ++seed) {
        int n = 3 + static_cast<int>(RngStream(seed).uniform(80));
        auto synth = synthesize_ultrametric(n, RngStream(seed).derive("s"));
        RepresentingTree rec =
            recover_representing_tree(*synth.oracle, n, RngStream(seed).derive("r"));
        // invert: max label + 1 as offset keeps everything positive
        Label maxl = 0;
        for (const auto& nd : rec.nodes)
            if (!nd.leaf && nd.label > maxl) maxl = nd.label;
        Label offset = maxl + 1;
        invert_labels(rec, offset);
        CutTree path = flow_equivalent_path_from_tree(rec);

        // path degree check: at most two neighbors per node
        std::vector<int> deg(static_cast<std::size_t>(n), 0);
        for (const auto& e : path.edges) {
            deg[static_cast<std::size_t>(e.u)]++;
            deg[static_cast<std::size_t>(e.v)]++;
        }
        for (int v = 0; v < n; ++v) CHECK(deg[static_cast<std::size_t>(v)] <= 2);

        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                CHECK(tree_max_flow_value(path, u, v) ==
                      offset - lca_label(synth.tree, u, v));
    }
}

TEST_CASE("non-binary trees are rejected by the path construction") {
    RepresentingTree t;
    t.n_points = 3;
    t.leaf_of_point.assign(3, -1);
    int a = t.new_leaf(0), b = t.new_leaf(1), c = t.new_leaf(2);
    int r = t.new_internal(Label(5));
    t.nodes[static_cast<std::size_t>(r)].children = {a, b, c};
    for (int leaf : {a, b, c}) t.nodes[static_cast<std::size_t>(leaf)].parent = r;
    t.root = r;
    CHECK_THROWS_AS(flow_equivalent_path_from_tree(t), Error);
}

TEST_CASE("maxflow adapter is an order-reversing ultrametric") {
    WeightedGraph g2(2, {{0, 1, 7}});
    MaxFlowDistanceAdapter a2(g2, make_exact_oracle(g2));
    CHECK(a2.dist(0, 1) == a2.offset() - 7);

    WeightedGraph g = perturb(gen_random_with_edges(9, 15, 8, 3), 3);
    MaxFlowDistanceAdapter adapter(g, make_exact_oracle(g));
    for (int u = 0; u < 9; ++u)
        for (int v = 0; v < 9; ++v)
            for (int w = 0; w < 9; ++w) {
                if (u == v || v == w || u == w) continue;
                Label duw = adapter.dist(u, w);
                Label duv = adapter.dist(u, v);
                Label dvw = adapter.dist(v, w);
                CHECK(duw <= std::max(duv, dvw));
            }
}

TEST_CASE("full pipeline: perturbed graph to flow-equivalent path") {
    for (std::uint64_t seed = 60; seed <= 70; ++seed) {
        WeightedGraph base = gen_random_with_edges(10, 17, 9, seed);
        WeightedGraph g = perturb(base, seed + 1);
        MaxFlowDistanceAdapter adapter(g, make_exact_oracle(g));
        RepresentingTree rec =
            recover_representing_tree(adapter, 10, RngStream(seed).derive("um"));
        invert_labels(rec, adapter.offset());
        CutTree path = flow_equivalent_path_from_tree(rec);
        auto m = all_pairs_min_cut_bruteforce(base);
        for (int u = 0; u < 10; ++u)
            for (int v = u + 1; v < 10; ++v)
                CHECK(round_back(tree_max_flow_value(path, u, v), 10) == m[u][v]);
    }
}
