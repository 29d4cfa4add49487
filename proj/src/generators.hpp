#ifndef MCQ_GENERATORS_HPP
#define MCQ_GENERATORS_HPP

#include <cstdint>

#include "graph.hpp"

namespace mcq {

// All generators are pure functions of their parameters and the seed.

// Connected G(n, p)-style graph: a random spanning tree plus each remaining
// pair independently with probability num/den, capacities uniform in [1, U].
WeightedGraph gen_random_connected(int n, std::uint64_t p_num, std::uint64_t p_den,
                                   std::int64_t max_cap, std::uint64_t seed);

// Random connected graph with exactly m edges (n-1 <= m <= n(n-1)/2).
WeightedGraph gen_random_with_edges(int n, int m, std::int64_t max_cap, std::uint64_t seed);

WeightedGraph gen_star(int leaves, std::int64_t max_cap, std::uint64_t seed);
WeightedGraph gen_path(int n, std::int64_t max_cap, std::uint64_t seed);
WeightedGraph gen_grid(int rows, int cols, std::int64_t max_cap, std::uint64_t seed);

// The auxiliary-graph adversary: two stars of ~n/3 leaves joined by a ~n/3
// path, plus every star-leaf pair crossing with low weight.
WeightedGraph gen_two_stars_path(int n, std::int64_t star_cap, std::uint64_t seed);

} // namespace mcq

#endif
