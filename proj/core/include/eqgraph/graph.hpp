#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace eqgraph
{
    using Vertex = std::uint32_t;
    using Edge = std::pair<Vertex, Vertex>; // always stored with first < second

    /// Finite simple undirected graph on {0, ..., n-1}. Edges are kept sorted,
    /// so an edge's position in edges() is a stable identifier.
    class Graph
    {
    public:
        Graph() = default;

        /// Throws Error{InvalidInput} on loops, repeated edges or endpoints out of range.
        Graph(std::size_t n, std::vector<Edge> edges);

        static auto complete(std::size_t n) -> Graph;
        static auto cycle(std::size_t n) -> Graph;
        static auto path(std::size_t n) -> Graph;
        static auto petersen() -> Graph;

        [[nodiscard]] auto n() const -> std::size_t { return _adj.size(); }
        [[nodiscard]] auto edge_count() const -> std::size_t { return _edges.size(); }
        [[nodiscard]] auto edges() const -> std::span<const Edge> { return _edges; }
        [[nodiscard]] auto neighbours(Vertex v) const -> std::span<const Vertex> { return _adj[v]; }
        [[nodiscard]] auto degree(Vertex v) const -> std::size_t { return _adj[v].size(); }
        [[nodiscard]] auto has_edge(Vertex u, Vertex v) const -> bool;
        [[nodiscard]] auto edge_id(Vertex u, Vertex v) const -> std::optional<std::size_t>;

        /// Component index per vertex, numbered in order of smallest vertex.
        [[nodiscard]] auto components() const -> std::vector<std::size_t>;
        [[nodiscard]] auto component_count() const -> std::size_t;

        [[nodiscard]] auto induced(std::span<const Vertex> keep) const -> Graph;

        auto operator==(const Graph & other) const -> bool { return _edges == other._edges && n() == other.n(); }

    private:
        std::vector<Edge> _edges;
        std::vector<std::vector<Vertex>> _adj;
    };

    inline auto make_edge(Vertex u, Vertex v) -> Edge
    {
        return u < v ? Edge{u, v} : Edge{v, u};
    }

    /// Host graph H with a homomorphism sigma into the pattern F.
    struct ColouredGraph
    {
        Graph host;
        Graph pattern;
        std::vector<Vertex> sigma;

        auto operator==(const ColouredGraph &) const -> bool = default;
    };

    /// Throws Error{NotAHomomorphism} naming the first offending edge, or
    /// Error{InvalidInput} when sigma has the wrong length or range.
    auto validate_coloured(Graph host, Graph pattern, std::vector<Vertex> sigma) -> ColouredGraph;

    /// An injection V(F) -> positive integers, values at most 10^6.
    class ColourOrdering
    {
    public:
        static constexpr std::int64_t max_value = 1'000'000;

        /// Throws Error{InvalidInput}.
        static auto validate(std::vector<std::int64_t> values) -> ColourOrdering;
        static auto identity(std::size_t pattern_size) -> ColourOrdering;
        /// Every ordering of {1..k}, in lexicographic order of the value vector.
        static auto all_permutations(std::size_t pattern_size) -> std::vector<ColourOrdering>;

        [[nodiscard]] auto operator()(Vertex colour) const -> std::int64_t { return _values[colour]; }
        [[nodiscard]] auto values() const -> std::span<const std::int64_t> { return _values; }
        [[nodiscard]] auto size() const -> std::size_t { return _values.size(); }

        auto operator==(const ColourOrdering &) const -> bool = default;

    private:
        explicit ColourOrdering(std::vector<std::int64_t> v) : _values(std::move(v)) {}
        std::vector<std::int64_t> _values;
    };

    enum class HomOutcome
    {
        Found,
        NotFound,
        BudgetExhausted
    };

    struct HomResult
    {
        HomOutcome outcome = HomOutcome::NotFound;
        std::vector<Vertex> mapping; // set when Found
        std::uint64_t nodes = 0;
    };

    constexpr std::uint64_t default_hom_budget = 50'000'000;

    /// Backtracking search for a homomorphism G -> T with forward checking.
    /// |T| is limited to 64 (bitset domains).
    auto hom_exists(const Graph & g, const Graph & t, std::uint64_t budget = default_hom_budget) -> HomResult;

    auto is_homomorphism(const Graph & g, const Graph & t, std::span<const Vertex> mapping) -> bool;

    /// Vertex v becomes sizes[v] consecutive vertices; classes are numbered
    /// in order of v. Throws Error{ZeroSize}.
    auto blow_up(const ColouredGraph & g, std::span<const std::size_t> sizes) -> ColouredGraph;

    struct CycleList
    {
        std::vector<std::vector<Vertex>> cycles;
        bool truncated_by_count = false;
        bool truncated_by_length = false;

        [[nodiscard]] auto truncated() const -> bool { return truncated_by_count || truncated_by_length; }
    };

    constexpr std::size_t default_max_cycles = 100'000;
    constexpr std::size_t default_max_cycle_length = 20;

    /// Rotates and reflects so the cycle starts at its smallest vertex and
    /// the second entry is smaller than the last.
    auto canonical_cycle(std::vector<Vertex> cycle) -> std::vector<Vertex>;

    /// All simple cycles (length >= 3) up to the caps, each once, in
    /// canonical form. Ordered by smallest vertex, then by discovery.
    auto enumerate_cycles(const Graph & g, std::size_t max_count = default_max_cycles,
        std::size_t max_len = default_max_cycle_length) -> CycleList;

    /// The chunk of enumerate_cycles whose cycles have smallest vertex s.
    auto enumerate_cycles_from(const Graph & g, Vertex s, std::size_t max_count, std::size_t max_len) -> CycleList;

    /// Fundamental cycles of a BFS spanning forest, one per non-tree edge.
    auto cycle_basis(const Graph & g) -> std::vector<std::vector<Vertex>>;

    /// Throws Error{NotACycle} unless the sequence is a simple cycle of g.
    auto check_cycle(const Graph & g, std::span<const Vertex> cycle) -> void;

    /// Wrap of a walk in a K3-coloured graph: +1 per step whose colour goes up
    /// by one mod 3, -1 otherwise. A closed walk repeats its first vertex at
    /// the end. Throws Error{PatternNotK3 | NotAWalk}.
    auto wrap(const ColouredGraph & g, std::span<const Vertex> walk) -> std::int64_t;
    auto cycle_wrap(const ColouredGraph & g, std::span<const Vertex> cycle) -> std::int64_t;

    auto is_k3(const Graph & pattern) -> bool;

    struct LevelMap
    {
        std::optional<std::vector<std::int64_t>> levels;  // level(v) = sigma(v) mod 3
        std::optional<std::vector<Vertex>> wrapped_cycle; // refutation when no levels exist
    };

    /// Colour-preserving homomorphism to the cyclically 3-coloured two-way
    /// infinite path, as integer levels; the lowest vertex of each component
    /// sits at level sigma(v) in {0,1,2}. Throws Error{PatternNotK3}.
    auto colour_hom_to_P3inf(const ColouredGraph & g) -> LevelMap;

    /// A cycle along which c(sigma(.)) increases at every step but one,
    /// returned starting at its minimum in increasing direction. Such a cycle
    /// has distinct colours, so only cycles of length <= |F| are examined.
    /// Throws Error{Truncated} if that enumeration hit max_count.
    auto has_increasing_cycle(const ColouredGraph & g, const ColourOrdering & c,
        std::size_t max_count = default_max_cycles) -> std::optional<std::vector<Vertex>>;

    /// Cycle order of a graph that is a single cycle; Error{NotACycle} otherwise.
    auto cycle_order(const Graph & g) -> std::vector<Vertex>;
}
