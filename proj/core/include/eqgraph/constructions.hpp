#pragma once

#include <eqgraph/equations.hpp>
#include <eqgraph/graph.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace eqgraph
{
    constexpr std::int64_t max_behrend_n = 1'000'000;

    struct BehrendSet
    {
        std::int64_t n = 0;
        std::vector<std::int64_t> members; // sorted, inside [1, n]
        // Sphere parameters: digits below (d + 1) / 2 in base d, k digits,
        // squared radius r. from_baseline marks the base-3 {0,1}-digit set,
        // which is kept when no sphere beats it.
        std::int64_t d = 0;
        std::int64_t k = 0;
        std::int64_t r = 0;
        bool from_baseline = false;
    };

    /// Members of [1, n] of the form 1 + m where m < n has base-3 digits in {0, 1}.
    auto ternary_baseline(std::int64_t n) -> std::vector<std::int64_t>;

    /// Largest sphere set over d in [2, 20], k in [2, 12] (ties to smaller d,
    /// then k, then r), or the ternary baseline if that is larger. The result
    /// is re-checked for 3-APs before returning. Throws Error{ScaleExceeded}.
    auto behrend_set(std::int64_t n) -> BehrendSet;

    /// O(|A|^2) check that no x < z < y in the set has x + y = 2z.
    auto is_progression_free(std::span<const std::int64_t> sorted_set) -> bool;

    struct RSCopy
    {
        std::int64_t x = 0;
        std::int64_t a = 0;
        std::vector<Vertex> vertices; // vertices[v] lies in part v
    };

    struct RSGraph
    {
        Graph pattern;
        ColourOrdering ordering;
        std::int64_t n = 0;
        std::vector<std::int64_t> set;
        std::int64_t part_size = 0; // |F| * n
        Graph graph;
        std::vector<Vertex> parts; // parts[vertex] is its pattern vertex
        std::vector<RSCopy> packing;
        std::size_t dropped = 0; // canonical copies leaving [part_size]
    };

    constexpr std::size_t max_rs_pattern = 6;
    constexpr std::int64_t max_rs_part = 100'000;

    /// Vertex (v, y) with y in [1, |F| n] is numbered v * |F| n + y - 1. For an
    /// edge uv of F, (u, x) ~ (v, y) iff y - x = (c(v) - c(u)) a with a in A.
    /// The copy for (x, a) places x + (c(v) - 1) a in part v.
    /// Throws Error{ScaleExceeded} or Error{InvalidInput} when A is not in [1, n].
    auto rs_graph(const Graph & pattern, const ColourOrdering & c, std::int64_t n, std::span<const std::int64_t> set) -> RSGraph;

    /// The value y of a vertex of the RS graph, and its part.
    auto rs_value(const RSGraph & rs, Vertex v) -> std::pair<Vertex, std::int64_t>;

    constexpr unsigned max_g_n = 4;

    /// A = {0..n-1} first, then B by subset mask, then C by subset mask.
    /// Throws Error{ScaleExceeded} for n > 4.
    auto g_n(unsigned n) -> Graph;

    /// g_3 on the elements and nonempty proper subsets only: 15 vertices,
    /// numbered A 0..2, then B masks 1..6, then C masks 1..6.
    auto fig5_graph() -> Graph;

    /// Three colour classes of g_n or fig5_graph (A = 0, B = 1, C = 2).
    auto g_n_parts(unsigned n, bool proper_subsets_only) -> std::vector<Vertex>;

    /// The two zero-sum halves: sum a_i x_i + sum b_j y_j = 0.
    struct GenusSplit
    {
        std::vector<std::size_t> x_indices;
        std::vector<std::size_t> y_indices;
        std::vector<std::int64_t> a;
        std::vector<std::int64_t> b;
    };

    /// From the genus witness; with more than two parts the lowest parts are
    /// merged until two remain. Throws Error{NotGenusTwo}.
    auto genus_split(const Equation & eq) -> GenusSplit;

    /// The (s + t - 1)-layer auxiliary graph with one path per ordered pair of
    /// distinct members. Layer values are the integers v_k of the path.
    class LayeredGraph
    {
    public:
        LayeredGraph(GenusSplit split, std::span<const std::int64_t> set);

        [[nodiscard]] auto layers() const -> std::size_t { return _values.size(); }
        [[nodiscard]] auto split() const -> const GenusSplit & { return _split; }
        [[nodiscard]] auto vertex_count() const -> std::size_t;
        [[nodiscard]] auto path_count() const -> std::size_t { return _pairs.size(); }
        [[nodiscard]] auto value(std::size_t layer, std::size_t id) const -> std::int64_t { return _values[layer][id]; }
        [[nodiscard]] auto layer_size(std::size_t layer) const -> std::size_t { return _values[layer].size(); }

        /// v_k for the pair (x, y), k counted from 0.
        [[nodiscard]] auto path_value(std::size_t layer, std::int64_t x, std::int64_t y) const -> std::int64_t;

        /// Vertex ids of the stored path for pair number p.
        [[nodiscard]] auto path(std::size_t p) const -> std::span<const std::size_t>;
        [[nodiscard]] auto pair(std::size_t p) const -> std::pair<std::int64_t, std::int64_t> { return _pairs[p]; }

        /// The pair whose path uses the edge between value u in `layer` and
        /// value v in layer + 1, computed from the two values alone.
        [[nodiscard]] auto recover_pair(std::size_t layer, std::int64_t u, std::int64_t v) const
            -> std::optional<std::pair<std::int64_t, std::int64_t>>;

        /// Coefficient carried by the edge from `layer` to layer + 1, and
        /// whether it introduces an x (true) or a y (false) variable.
        [[nodiscard]] auto step(std::size_t layer) const -> std::pair<std::int64_t, bool>;

        /// Neighbours in layer + 1 of vertex id in `layer`, sorted by value.
        [[nodiscard]] auto forward(std::size_t layer, std::size_t id) const -> std::span<const std::size_t> { return _forward[layer][id]; }

    private:
        GenusSplit _split;
        std::vector<std::vector<std::int64_t>> _values;
        std::vector<std::vector<std::vector<std::size_t>>> _forward;
        std::vector<std::pair<std::int64_t, std::int64_t>> _pairs;
        std::vector<std::size_t> _path_store; // layers() ids per path
    };

    enum class SolveMode
    {
        Greedy,  // degree guarantee held; the proof's greedy walk
        Search,  // below the guarantee; budgeted backtracking found a path
        Abstain
    };

    auto to_string(SolveMode m) -> std::string_view;

    struct DistinctSolveResult
    {
        SolveMode mode = SolveMode::Abstain;
        std::optional<std::vector<std::int64_t>> assignment; // in the equation's variable order
        GenusSplit split;
        std::size_t s = 0, t = 0;
        std::size_t set_size = 0;
        std::int64_t c_proof = 0;          // (s + t - 1)(sum |a_i| + sum |b_j|)
        std::int64_t vertex_bound = 0;     // sum over layers of the value range sizes
        std::size_t vertices = 0;
        std::size_t paths = 0;
        std::size_t surviving_paths = 0;
        double degree_bound = 0;           // |P| / 2n with n = vertex_bound
        std::size_t degree_needed = 0;     // 2(s + t)
        bool guarantee = false;
        std::int64_t threshold_proof = 0;  // least M with M^2 >= 8 c_proof (s + t) N
        std::int64_t threshold_layers = 0; // least M with M(M - 1) >= 4 (s + t) vertex_bound
        std::size_t search_nodes = 0;
    };

    /// Follows the proof that genus >= 2 forces distinct solutions in large
    /// sets: layered graph, sparsification at |P| / 2n, then the greedy walk.
    /// When the guarantee fails a budgeted search over the full graph still
    /// runs; Abstain means neither produced a path. Any assignment returned
    /// has been checked to be an all-distinct solution.
    /// Throws Error{NotGenusTwo} or Error{InvalidInput}.
    auto find_distinct_solution(const Equation & eq, std::span<const std::int64_t> set, std::int64_t n,
        std::size_t search_budget = 1'000'000) -> DistinctSolveResult;
}
