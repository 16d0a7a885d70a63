#pragma once

#include <eqgraph/checked.hpp>
#include <eqgraph/graph.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace eqgraph
{
    /// Each copy lists host vertices by pattern vertex: copy[i] plays i.
    using FCopyPacking = std::vector<std::vector<Vertex>>;

    constexpr std::size_t max_packing_pattern = 5;

    /// Maximal edge-disjoint family of copies of F, taking the
    /// lexicographically first available embedding each time. With `parts`,
    /// only aligned copies (copy[i] in part i) are used. F needs an edge.
    /// Throws Error{ScaleExceeded} or Error{InvalidInput}.
    auto greedy_packing(const Graph & g, const Graph & f, const std::vector<Vertex> * parts = nullptr) -> FCopyPacking;

    /// Every host vertex on each copy, and the copies are edge-disjoint and
    /// induce F's edges. Returns a description of the first problem, if any.
    auto check_packing(const Graph & g, const Graph & f, const FCopyPacking & packing) -> std::optional<std::string>;

    struct UniformFarWitness
    {
        std::vector<Vertex> parts; // F-partition: parts[v] is a pattern vertex
        FCopyPacking copies;
        double eps = 0;
    };

    struct UniformFarCheck
    {
        bool accepted = false;
        std::string condition; // first failed condition, empty when accepted
        std::optional<std::size_t> vertex;
        std::optional<std::size_t> copy;
    };

    /// Both conditions of uniform farness (aligned edge-disjoint copies, every
    /// vertex in at least eps |G| of them) plus their consequences: degrees of
    /// at least eps |G| into each adjacent part, part sizes of at least eps |G|
    /// for non-isolated pattern vertices, and at least eps |G|^2 / |F| copies.
    auto verify_uniform_far(const Graph & g, const Graph & f, const UniformFarWitness & witness) -> UniformFarCheck;

    struct UniformizeResult
    {
        Graph subgraph;                 // union of the surviving copies
        std::vector<Vertex> original;   // subgraph vertex -> host vertex
        UniformFarWitness witness;      // on the subgraph, eps = eps'
        double eps_prime = 0;           // eps / (2 |F|^|F|)
        std::size_t attempts = 0;       // random partitions tried
        std::size_t aligned = 0;        // copies surviving the partition
        std::size_t kept = 0;           // copies left after sparsifying
    };

    constexpr std::size_t default_retry_cap = 64;

    /// Random F-partition keeping at least |C| / |F|^|F| aligned copies
    /// (retrying), then removal of copies through vertices on fewer than
    /// eps' n of them. Throws Error{PackingTooSmall} when |C| < eps n^2 and
    /// Error{RetryCapExceeded}.
    auto uniformize(const Graph & g, const Graph & f, const FCopyPacking & packing, double eps, std::uint64_t seed,
        std::size_t retry_cap = default_retry_cap) -> UniformizeResult;

    /// Paths x1 x2 x3 x4 with x1, x4 in part 0, x2 in part 1, x3 in part 2
    /// (x1 != x4). parts[v] outside {0, 1, 2} leaves v out.
    auto count_p4_aligned(const Graph & g, std::span<const Vertex> parts) -> BigCount;

    constexpr std::size_t max_c5_vertices = 300;

    /// Number of 5-cycles as subgraphs, from closed-walk counts.
    /// Throws Error{ScaleExceeded}.
    auto count_c5(const Graph & g) -> BigCount;

    struct CoreIteration
    {
        std::size_t size = 0;  // |A_i| (or |B_i|)
        std::size_t mass = 0;  // m(G_i): packing triangles left
        double p = 0;          // m(G_i) / (n |A_i|)
    };

    struct DenseCoreReport
    {
        std::size_t n = 0;
        double delta = 0;
        double p = 0;                    // greedy packing size / n^2
        std::size_t packing = 0;         // triangles in the greedy packing
        std::size_t aligned = 0;         // those with one vertex per part
        std::size_t attempts = 0;
        std::vector<Vertex> parts;       // 0 = A, 1 = B, 2 = C
        std::vector<CoreIteration> a_steps;
        std::vector<CoreIteration> b_steps;
        std::size_t a_rounds = 0;        // t: steps before stopping on the A side
        std::size_t b_rounds = 0;
        double round_bound = 0;          // log(n) / log(1 / delta)
        std::vector<Vertex> core_a;      // A_{t+1}
        std::vector<Vertex> core_b;      // B_{s+1}
        std::size_t core_mass = 0;
        std::vector<BigCount> yields;    // aligned P4s closing a C5 through each x in core_b
        BigCount total_yield;
        std::optional<BigCount> c5;      // exact count in G when n <= 300
    };

    /// The A-side then B-side refinement: keep vertices on at least
    /// delta p_i n packed triangles until a step keeps a delta fraction.
    /// m(.) counts triangles of one fixed aligned greedy packing.
    /// Throws Error{NoTriangles}, Error{InvalidInput} or Error{RetryCapExceeded}.
    auto dense_core_c5(const Graph & g, double delta, std::uint64_t seed, std::size_t retry_cap = default_retry_cap) -> DenseCoreReport;
}
