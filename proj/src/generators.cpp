#include "generators.hpp"

#include <algorithm>
#include <set>

#include "errors.hpp"
#include "rng.hpp"

namespace mcq {

namespace {

Capacity rand_cap(RngStream& rng, std::int64_t max_cap) {
    if (max_cap < 1) raise(ErrorCode::invalid_input, "max capacity must be >= 1");
    return Capacity(static_cast<std::int64_t>(
        rng.uniform(static_cast<std::uint64_t>(max_cap)) + 1));
}

// random spanning tree by attaching each node to a random earlier one
std::vector<std::pair<int, int>> random_tree_pairs(int n, RngStream& rng) {
    std::vector<std::pair<int, int>> pairs;
    for (int v = 1; v < n; ++v) {
        int u = static_cast<int>(rng.uniform(static_cast<std::uint64_t>(v)));
        pairs.push_back({u, v});
    }
    return pairs;
}

} // namespace

WeightedGraph gen_random_connected(int n, std::uint64_t p_num, std::uint64_t p_den,
                                   std::int64_t max_cap, std::uint64_t seed) {
    if (n < 1) raise(ErrorCode::invalid_input, "need n >= 1");
    if (p_den == 0) raise(ErrorCode::invalid_input, "probability denominator is zero");
    RngStream rng = RngStream(seed).derive("gen-random");

    std::set<std::pair<int, int>> chosen;
    for (auto pr : random_tree_pairs(n, rng)) chosen.insert(pr);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.uniform(p_den) < p_num) chosen.insert({u, v});

    std::vector<Edge> edges;
    for (auto [u, v] : chosen) edges.push_back({u, v, rand_cap(rng, max_cap)});
    return WeightedGraph(n, std::move(edges));
}

WeightedGraph gen_random_with_edges(int n, int m, std::int64_t max_cap, std::uint64_t seed) {
    if (n < 1) raise(ErrorCode::invalid_input, "need n >= 1");
    std::int64_t max_edges = static_cast<std::int64_t>(n) * (n - 1) / 2;
    if (m < n - 1 || m > max_edges)
        raise(ErrorCode::invalid_input, "edge count out of range for a connected simple graph");
    RngStream rng = RngStream(seed).derive("gen-edges");

    std::set<std::pair<int, int>> chosen;
    for (auto pr : random_tree_pairs(n, rng)) chosen.insert(pr);
    while (static_cast<int>(chosen.size()) < m) {
        int u = static_cast<int>(rng.uniform(static_cast<std::uint64_t>(n)));
        int v = static_cast<int>(rng.uniform(static_cast<std::uint64_t>(n)));
        if (u == v) continue;
        chosen.insert(std::minmax(u, v));
    }

    std::vector<Edge> edges;
    for (auto [u, v] : chosen) edges.push_back({u, v, rand_cap(rng, max_cap)});
    return WeightedGraph(n, std::move(edges));
}

WeightedGraph gen_star(int leaves, std::int64_t max_cap, std::uint64_t seed) {
    if (leaves < 1) raise(ErrorCode::invalid_input, "need at least one leaf");
    RngStream rng = RngStream(seed).derive("gen-star");
    std::vector<Edge> edges;
    for (int v = 1; v <= leaves; ++v) edges.push_back({0, v, rand_cap(rng, max_cap)});
    return WeightedGraph(leaves + 1, std::move(edges));
}

WeightedGraph gen_path(int n, std::int64_t max_cap, std::uint64_t seed) {
    if (n < 2) raise(ErrorCode::invalid_input, "need n >= 2");
    RngStream rng = RngStream(seed).derive("gen-path");
    std::vector<Edge> edges;
    for (int v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1, rand_cap(rng, max_cap)});
    return WeightedGraph(n, std::move(edges));
}

WeightedGraph gen_grid(int rows, int cols, std::int64_t max_cap, std::uint64_t seed) {
    if (rows < 1 || cols < 1) raise(ErrorCode::invalid_input, "grid needs positive dims");
    RngStream rng = RngStream(seed).derive("gen-grid");
    auto id = [cols](int r, int c) { return r * cols + c; };
    std::vector<Edge> edges;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) edges.push_back({id(r, c), id(r, c + 1), rand_cap(rng, max_cap)});
            if (r + 1 < rows) edges.push_back({id(r, c), id(r + 1, c), rand_cap(rng, max_cap)});
        }
    }
    return WeightedGraph(rows * cols, std::move(edges));
}

WeightedGraph gen_two_stars_path(int n, std::int64_t star_cap, std::uint64_t seed) {
    if (n < 9) raise(ErrorCode::invalid_input, "two-star family needs n >= 9");
    RngStream rng = RngStream(seed).derive("gen-two-stars");

    int third = n / 3;
    int leaves_a = third;
    int leaves_b = third;
    int path_len = n - 2 * third - 2; // interior path nodes between the centers

    // layout: center_a = 0, leaves of a = 1..third, center_b, leaves of b,
    // then the path nodes
    int center_a = 0;
    int center_b = leaves_a + 1;
    int first_leaf_b = center_b + 1;
    int first_path = first_leaf_b + leaves_b;

    std::vector<Edge> edges;
    for (int i = 0; i < leaves_a; ++i)
        edges.push_back({center_a, 1 + i, Capacity(star_cap) + static_cast<std::int64_t>(i)});
    for (int i = 0; i < leaves_b; ++i)
        edges.push_back({center_b, first_leaf_b + i,
                         Capacity(star_cap) + static_cast<std::int64_t>(leaves_a + i)});

    int prev = center_a;
    for (int i = 0; i < path_len; ++i) {
        edges.push_back({prev, first_path + i, Capacity(star_cap) * 2});
        prev = first_path + i;
    }
    edges.push_back({prev, center_b, Capacity(star_cap) * 2});

    // all star-leaf pairs crossing with unit weight
    for (int i = 0; i < leaves_a; ++i)
        for (int j = 0; j < leaves_b; ++j)
            edges.push_back({1 + i, first_leaf_b + j, 1});

    (void)rng;
    return WeightedGraph(n, std::move(edges));
}

} // namespace mcq
