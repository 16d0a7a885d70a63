#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace eqgraph
{
    /// A translation-invariant linear equation a_1 x_1 + ... + a_k x_k = 0:
    /// k >= 2, every a_i nonzero with |a_i| <= 2^31, and the a_i sum to zero.
    /// Instances only exist in validated form.
    class Equation
    {
    public:
        static constexpr std::int64_t max_abs_coefficient = std::int64_t{1} << 31;

        /// Throws Error{ZeroCoefficient | NonzeroSum | TooShort | CoefficientOutOfRange}.
        static auto validate(std::vector<std::int64_t> coeffs) -> Equation;

        [[nodiscard]] auto coefficients() const -> std::span<const std::int64_t> { return _coeffs; }
        [[nodiscard]] auto size() const -> std::size_t { return _coeffs.size(); }
        [[nodiscard]] auto operator[](std::size_t i) const -> std::int64_t { return _coeffs[i]; }

        auto operator==(const Equation &) const -> bool = default;

    private:
        explicit Equation(std::vector<std::int64_t> coeffs) : _coeffs(std::move(coeffs)) {}

        std::vector<std::int64_t> _coeffs;
    };

    /// Parses "1,1,-2" (whitespace tolerated). Throws Error{InvalidInput}.
    auto parse_coefficient_list(std::string_view text) -> std::vector<std::int64_t>;
    auto format_coefficient_list(std::span<const std::int64_t> coeffs) -> std::string;

    struct ZeroSumPartition
    {
        std::vector<std::vector<std::size_t>> parts; // sorted, ordered by smallest index
        std::vector<std::int64_t> part_sums;         // all zero
    };

    struct GenusResult
    {
        unsigned genus = 0;
        ZeroSumPartition witness;
    };

    constexpr std::size_t max_genus_variables = 24;

    /// Maximum number of parts in a partition of the indices into zero-sum
    /// blocks. Exact bitmask search; throws Error{TooManyVariables} for k > 24.
    auto genus(const Equation & eq) -> GenusResult;

    /// True iff some nonempty proper subset of the coefficients sums to zero,
    /// i.e. genus >= 2. Pseudo-polynomial subset-sum, usable for any k where
    /// the coefficient magnitudes are moderate (meet-in-the-middle otherwise).
    auto has_proper_zero_sum_subset(std::span<const std::int64_t> coeffs) -> bool;

    inline auto is_genus_one(const Equation & eq) -> bool
    {
        return ! has_proper_zero_sum_subset(eq.coefficients());
    }

    /// Exactly one coefficient differs in sign from all the others (either polarity).
    auto is_convex(const Equation & eq) -> bool;

    /// The coefficient multiset equals its negation. Such a multiset pairs off
    /// as {a, -a} blocks, which is the form sum a_i x_i = sum a_i x_{l+i}.
    auto is_symmetric(const Equation & eq) -> bool;

    enum class SolutionClass
    {
        NotASolution,
        Trivial,
        NonTrivialWithRepeats,
        AllDistinct
    };

    auto to_string(SolutionClass c) -> std::string_view;

    /// Throws Error{LengthMismatch} when |x| != k.
    auto classify_solution(const Equation & eq, std::span<const std::int64_t> x) -> SolutionClass;

    enum class AvoidanceMode
    {
        DistinctFree,  // no all-distinct solution (R_E)
        NontrivialFree // no non-trivial solution (r_E)
    };

    auto to_string(AvoidanceMode m) -> std::string_view;
    auto is_forbidden(AvoidanceMode m, SolutionClass c) -> bool;

    struct AvoidanceResult
    {
        std::size_t n_max = 0;
        std::vector<std::int64_t> witness;
        AvoidanceMode mode = AvoidanceMode::DistinctFree;
    };

    constexpr std::int64_t max_avoidance_n = 40;
    constexpr std::size_t max_avoidance_variables = 6;

    /// Largest subset of [1, n] avoiding forbidden solutions, by branch and
    /// bound. Among maximum sets the lexicographically first is returned, so
    /// the result does not depend on `jobs`. Throws Error{ScaleExceeded}.
    auto brute_avoidance(const Equation & eq, std::int64_t n, AvoidanceMode mode, unsigned jobs = 1) -> AvoidanceResult;

    /// Best avoiding set whose smallest element is `first`; the unit of work
    /// that brute_avoidance splits across jobs.
    auto brute_avoidance_branch(const Equation & eq, std::int64_t n, AvoidanceMode mode, std::int64_t first,
        std::size_t must_exceed = 0) -> std::optional<AvoidanceResult>;

    /// Number of ordered k-tuples of pairwise distinct members of `set`
    /// solving the equation. Throws Error{ScaleExceeded} past ~10^9 steps.
    auto count_distinct_solutions(const Equation & eq, std::span<const std::int64_t> set) -> std::uint64_t;
}
