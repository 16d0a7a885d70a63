#pragma once

#include <eqgraph/abundance.hpp>
#include <eqgraph/equations.hpp>
#include <eqgraph/graph.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace eqgraph
{
    /// One equation per cycle: the edge from v_i to v_{i+1} carries the
    /// coefficient c(sigma(v_{i+1})) - c(sigma(v_i)). Variables are edges of
    /// the host, so equations of different cycles share variables.
    struct CycleEquation
    {
        std::vector<Vertex> cycle;
        std::vector<std::size_t> edge_ids; // edge_ids[i] is the edge cycle[i] -- cycle[i+1]
        Equation eq;
    };

    /// Throws Error{NotACycle}.
    auto build_cycle_equation(std::span<const Vertex> cycle, const ColouredGraph & g, const ColourOrdering & c) -> CycleEquation;

    struct CycleEquationSystem
    {
        std::vector<CycleEquation> equations;
        bool all_cycles = true; // false: built from a cycle basis
        bool truncated = false;
    };

    auto build_system(const ColouredGraph & g, const ColourOrdering & c, bool from_basis = false,
        std::size_t max_count = default_max_cycles, std::size_t max_len = default_max_cycle_length) -> CycleEquationSystem;

    /// Decides whether some linear combination of Eq(H, sigma, c) is convex by
    /// searching single cycles only, which suffices. A convex cycle-equation
    /// has distinct colours, so cycles longer than |F| are never needed.
    /// Throws Error{Truncated} if the enumeration hit max_count.
    auto exists_convex_combination(const ColouredGraph & g, const ColourOrdering & c,
        std::size_t max_count = default_max_cycles) -> std::optional<CycleEquation>;

    struct SymmetryVerdict
    {
        bool all_symmetric = false;
        std::optional<std::vector<std::int64_t>> levels;
        std::optional<CycleEquation> witness; // wrapped cycle, c = (1,2,3)
    };

    /// Every cycle-equation of a K3-coloured graph is symmetric iff the graph
    /// maps to the cyclically coloured infinite path. Throws Error{PatternNotK3}.
    auto eqs_all_symmetric(const ColouredGraph & g) -> SymmetryVerdict;

    struct CycleClassification
    {
        bool abundant = false;
        // Abundant: positions i, j in the cycle order with equal colours and
        // the derivation (C4 on v_i v_{i+1} v_j v_{i-1}, then two glued paths).
        std::size_t i = 0, j = 0;
        std::optional<AbundanceCertificate> certificate;
        // NotAbundant: c(sigma(v_i)) = i + 1 along the cycle order makes the
        // cycle-equation convex.
        std::optional<ColourOrdering> ordering;
        std::optional<CycleEquation> convex_witness;
        std::vector<Vertex> order;
    };

    /// Throws Error{NotACycle} unless the host is a single cycle.
    auto classify_cycle(const ColouredGraph & g) -> CycleClassification;

    struct SearchBounds
    {
        std::size_t t = 2;         // cycles per combination
        std::int64_t L = 2;        // largest |multiplier|
        std::size_t max_count = default_max_cycles;
        std::size_t max_len = default_max_cycle_length;
    };

    struct CombinationWitness
    {
        std::vector<std::vector<Vertex>> cycles;
        std::vector<std::int64_t> multipliers;
        std::vector<std::size_t> edge_ids; // variables of the combined equation
        Equation eq;
        bool genus_one = false;
        bool convex = false;
    };

    /// Recomputes the combination from the cycles and multipliers and checks
    /// the stated equation and properties.
    auto recheck_witness(const CombinationWitness & w, const ColouredGraph & g, const ColourOrdering & c) -> bool;

    /// Combinations of at most t cycles with multipliers in [-L, L] \ {0}
    /// (first multiplier positive, multipliers coprime) whose combined
    /// equation has genus one. Nullopt means none within the bounds.
    /// Throws Error{Truncated} when the cycle list was capped.
    auto genus_one_combination_search(const ColouredGraph & g, const ColourOrdering & c, const SearchBounds & bounds = {})
        -> std::optional<CombinationWitness>;

    /// Same search over a prepared system; equations must share g and c.
    auto genus_one_combination_search(const CycleEquationSystem & system, const SearchBounds & bounds)
        -> std::optional<CombinationWitness>;

    enum class ColouringCheck
    {
        GenusOne,
        Convex,
        Symmetric,
        Cycle
    };

    auto to_string(ColouringCheck c) -> std::string_view;
    auto parse_colouring_check(std::string_view s) -> ColouringCheck;

    struct CheckAllOptions
    {
        ColouringCheck check = ColouringCheck::GenusOne;
        SearchBounds bounds;
        bool all_orderings = false; // genus-one: every ordering of {1,2,3} instead of the identity
        bool symmetry_reduction = true;
        unsigned jobs = 1;
    };

    struct OrderingOutcome
    {
        ColourOrdering ordering;
        std::optional<CombinationWitness> genus_one;
        std::optional<CycleEquation> convex;
    };

    struct ColouringVerdict
    {
        std::size_t index = 0;
        std::vector<Vertex> colouring;
        std::size_t orbit_size = 1;
        bool holds = false;  // genus1/convex: witness found; symmetric: all symmetric; cycle: abundant
        std::string verdict;
        std::vector<OrderingOutcome> orderings; // genus1 and convex checks
        std::optional<SymmetryVerdict> symmetry;
        std::optional<CycleClassification> cycle;
    };

    struct CheckAllSummary
    {
        std::size_t classes = 0;
        std::size_t colourings = 0;
        std::size_t holding = 0;
        std::vector<std::size_t> failing; // class indices without the property
        bool symmetry_reduction = true;
    };

    constexpr std::size_t max_check_all_vertices = 18;

    /// Enumerates proper 3-colourings (one per orbit of the colour
    /// permutations when symmetry reduction is on), runs the check on each and
    /// streams verdicts in canonical order. For the genus-one check with the
    /// identity ordering, a class is only counted as holding if every
    /// colouring in its orbit has a witness. Throws Error{ScaleExceeded}.
    auto check_all_colourings(const Graph & g, const CheckAllOptions & options,
        const std::function<void(const ColouringVerdict &)> & sink) -> CheckAllSummary;

    /// Proper 3-colourings of g; with `canonical`, only those where colours
    /// first appear in the order 0, 1, 2 along the vertex order.
    auto proper_3_colourings(const Graph & g, bool canonical) -> std::vector<std::vector<Vertex>>;
}
