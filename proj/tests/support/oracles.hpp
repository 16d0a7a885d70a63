#pragma once

// Brute-force reference implementations for the tests. Nothing here calls
// into the library's algorithms; only the plain data types are shared.

#include <eqgraph/graph.hpp>

#include <cstdint>
#include <random>
#include <set>
#include <vector>

namespace oracle
{
    using eqgraph::Edge;
    using eqgraph::Graph;
    using eqgraph::Vertex;

    using AdjMatrix = std::vector<std::vector<char>>;

    auto adjacency(const Graph & g) -> AdjMatrix;

    /// Tries every zero-sum block containing the first remaining coefficient.
    auto naive_genus(std::vector<std::int64_t> coeffs) -> unsigned;

    /// Every simple cycle (length >= 3) as a canonical vertex sequence:
    /// smallest vertex first, then the smaller of its two neighbours.
    auto all_cycles(const Graph & g) -> std::set<std::vector<Vertex>>;

    /// +1 when the colour steps up by one mod 3, -1 otherwise.
    auto wrap_of_cycle(const std::vector<Vertex> & cycle, const std::vector<Vertex> & sigma) -> std::int64_t;

    /// Coefficients of the cycle-equation, one per edge in cycle order.
    auto cycle_coefficients(const std::vector<Vertex> & cycle, const std::vector<Vertex> & sigma,
        const std::vector<std::int64_t> & c) -> std::vector<std::int64_t>;

    auto multiset_symmetric(std::vector<std::int64_t> coeffs) -> bool;

    auto is_bipartite(const Graph & g) -> bool;

    auto triangles(const Graph & g) -> std::vector<std::vector<Vertex>>;

    /// Ordered 4-tuples (x1, x2, x3, x4) of a path with x1, x4 in part 0,
    /// x2 in part 1, x3 in part 2 and x1 != x4, by trying every tuple.
    auto p4_aligned(const Graph & g, const std::vector<Vertex> & parts) -> std::uint64_t;

    /// 5-cycles as subgraphs: closed walks on five distinct vertices / 10.
    auto c5_count(const Graph & g) -> std::uint64_t;

    /// No a < b < c in the set with a + c = 2b, checked over all pairs.
    auto progression_free(const std::vector<std::int64_t> & sorted_set) -> bool;

    /// Integers m in [0, n) whose base-3 digits are all 0 or 1.
    auto ternary_count(std::int64_t n) -> std::int64_t;

    auto random_graph(std::mt19937_64 & rng, std::size_t n, double p) -> Graph;

    /// Random graph with a random proper colouring into K3 (colour first,
    /// then edges between different colours).
    struct K3Coloured
    {
        Graph g;
        std::vector<Vertex> sigma;
    };
    auto random_k3_coloured(std::mt19937_64 & rng, std::size_t n, double p) -> K3Coloured;
}
