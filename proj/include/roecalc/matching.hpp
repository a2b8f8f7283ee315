#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace roecalc {

/// Maximum-cardinality matching in a bipartite graph (Hopcroft–Karp).
/// `adjacency[u]` lists right vertices adjacent to left vertex u, in the order
/// they should be tried; the result is deterministic for a given adjacency.
/// Returns matched (left, right) pairs sorted by left vertex.
std::vector<std::pair<std::size_t, std::size_t>> maximum_bipartite_matching(
    std::size_t left_count, std::size_t right_count,
    const std::vector<std::vector<std::size_t>>& adjacency);

}  // namespace roecalc
