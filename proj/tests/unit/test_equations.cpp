#include <eqgraph/equations.hpp>
#include <eqgraph/error.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace eqgraph;

namespace
{
    auto kind_of(auto && fn) -> ErrorKind
    {
        try {
            fn();
        }
        catch (const Error & e) {
            return e.kind();
        }
        ADD_FAILURE() << "no error thrown";
        return ErrorKind::InvalidInput;
    }

    auto random_equation(std::mt19937_64 & rng, std::size_t k, std::int64_t bound) -> std::vector<std::int64_t>
    {
        std::uniform_int_distribution<std::int64_t> d(-bound, bound);
        while (true) {
            std::vector<std::int64_t> c(k);
            for (auto & x : c)
                do
                    x = d(rng);
                while (x == 0);
            auto sum = std::accumulate(c.begin(), c.end(), std::int64_t{0});
            if (sum == 0)
                return c;
        }
    }
}

TEST(Equation, Validation)
{
    EXPECT_EQ(kind_of([] { Equation::validate({1, 0, -1}); }), ErrorKind::ZeroCoefficient);
    EXPECT_EQ(kind_of([] { Equation::validate({1, 1}); }), ErrorKind::NonzeroSum);
    EXPECT_EQ(kind_of([] { Equation::validate({0}); }), ErrorKind::TooShort);
    EXPECT_EQ(kind_of([] { Equation::validate({}); }), ErrorKind::TooShort);
    auto big = Equation::max_abs_coefficient + 1;
    EXPECT_EQ(kind_of([&] { Equation::validate({big, -big}); }), ErrorKind::CoefficientOutOfRange);
    EXPECT_NO_THROW(Equation::validate({Equation::max_abs_coefficient, -Equation::max_abs_coefficient}));
}

TEST(Equation, ParseList)
{
    EXPECT_EQ(parse_coefficient_list(" 2, 2,+2,-3 , -3"), (std::vector<std::int64_t>{2, 2, 2, -3, -3}));
    EXPECT_EQ(parse_coefficient_list("1,-1"), (std::vector<std::int64_t>{1, -1}));
    EXPECT_EQ(kind_of([] { parse_coefficient_list("1,,2"); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([] { parse_coefficient_list("1,x"); }), ErrorKind::InvalidInput);
    EXPECT_EQ(format_coefficient_list(std::vector<std::int64_t>{1, 1, -2}), "1,1,-2");
}

TEST(Genus, KnownValues)
{
    EXPECT_EQ(genus(Equation::validate({1, 1, -2})).genus, 1u);
    EXPECT_EQ(genus(Equation::validate({2, 2, 2, -3, -3})).genus, 1u);
    EXPECT_EQ(genus(Equation::validate({1, 1, -1, -1})).genus, 2u);
    EXPECT_EQ(genus(Equation::validate({1, -1, 1, -1, 1, -1})).genus, 3u);
    EXPECT_EQ(genus(Equation::validate({1, -1, 1, 1, -2})).genus, 2u);
}

TEST(Genus, WitnessIsAPartitionIntoZeroSumBlocks)
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        auto c = random_equation(rng, 2 + trial % 9, 6);
        auto g = genus(Equation::validate(c));
        ASSERT_EQ(g.witness.parts.size(), g.genus);
        std::vector<int> seen(c.size(), 0);
        std::size_t last_min = 0;
        for (std::size_t p = 0; p < g.witness.parts.size(); ++p) {
            auto & part = g.witness.parts[p];
            ASSERT_FALSE(part.empty());
            EXPECT_TRUE(std::is_sorted(part.begin(), part.end()));
            if (p > 0) {
                EXPECT_LT(last_min, part.front());
            }
            last_min = part.front();
            std::int64_t s = 0;
            for (auto i : part) {
                s += c[i];
                ++seen[i];
            }
            EXPECT_EQ(s, 0);
        }
        EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](int x) { return x == 1; }));
    }
}

TEST(Genus, MatchesNaiveRecursion)
{
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 400; ++trial) {
        auto c = random_equation(rng, 2 + trial % 10, 4);
        EXPECT_EQ(genus(Equation::validate(c)).genus, oracle::naive_genus(c)) << format_coefficient_list(c);
    }
}

TEST(Genus, ProperZeroSumSubsetMeansGenusAtLeastTwo)
{
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 400; ++trial) {
        auto c = random_equation(rng, 2 + trial % 12, 9);
        auto e = Equation::validate(c);
        EXPECT_EQ(has_proper_zero_sum_subset(c), genus(e).genus >= 2);
        EXPECT_EQ(is_genus_one(e), genus(e).genus == 1);
    }
}

TEST(Genus, TooManyVariables)
{
    std::vector<std::int64_t> c(26, 1);
    c.back() = -25;
    EXPECT_EQ(kind_of([&] { genus(Equation::validate(c)); }), ErrorKind::TooManyVariables);
    EXPECT_FALSE(has_proper_zero_sum_subset(c));
}

TEST(Shape, ConvexAndSymmetric)
{
    EXPECT_TRUE(is_convex(Equation::validate({1, 1, -2})));
    EXPECT_TRUE(is_convex(Equation::validate({-1, -1, -1, 3})));
    EXPECT_FALSE(is_convex(Equation::validate({2, 2, 2, -3, -3})));
    EXPECT_TRUE(is_symmetric(Equation::validate({1, 1, -1, -1})));
    EXPECT_TRUE(is_symmetric(Equation::validate({3, -2, 2, -3})));
    EXPECT_FALSE(is_symmetric(Equation::validate({1, 1, -2})));
}

TEST(Solutions, Classes)
{
    auto e = Equation::validate({1, -1, 1, 1, -2});
    EXPECT_EQ(classify_solution(e, std::vector<std::int64_t>{1, 2, 3, 6, 4}), SolutionClass::AllDistinct);
    EXPECT_EQ(classify_solution(e, std::vector<std::int64_t>{5, 5, 5, 5, 5}), SolutionClass::Trivial);
    EXPECT_EQ(classify_solution(e, std::vector<std::int64_t>{3, 3, 1, 5, 3}), SolutionClass::NonTrivialWithRepeats);
    EXPECT_EQ(classify_solution(e, std::vector<std::int64_t>{1, 2, 3, 4, 5}), SolutionClass::NotASolution);
    auto sym = Equation::validate({1, 1, -1, -1});
    EXPECT_EQ(classify_solution(sym, std::vector<std::int64_t>{1, 2, 2, 1}), SolutionClass::Trivial);
    EXPECT_EQ(kind_of([&] { classify_solution(e, std::vector<std::int64_t>{1, 2}); }), ErrorKind::LengthMismatch);
}

TEST(Avoidance, ThreeTermProgressions)
{
    // Largest 3-AP-free subsets of [1, n], from a subset-by-subset search.
    const std::vector<std::size_t> expected{1, 2, 2, 3, 4, 4, 4, 4, 5, 5, 6, 6, 7, 8, 8, 8, 8, 8, 8, 9};
    auto ap = Equation::validate({1, 1, -2});
    for (std::int64_t n = 1; n <= 20; ++n) {
        auto r = brute_avoidance(ap, n, AvoidanceMode::NontrivialFree);
        EXPECT_EQ(r.n_max, expected[n - 1]) << "n = " << n;
        EXPECT_EQ(r.witness.size(), r.n_max);
        EXPECT_TRUE(oracle::progression_free(r.witness));
        EXPECT_TRUE(std::all_of(r.witness.begin(), r.witness.end(), [&](auto x) { return x >= 1 && x <= n; }));
    }
}

TEST(Avoidance, JobsDoNotChangeTheWitness)
{
    auto e = Equation::validate({1, 1, -1, -1});
    auto one = brute_avoidance(e, 24, AvoidanceMode::DistinctFree, 1);
    auto four = brute_avoidance(e, 24, AvoidanceMode::DistinctFree, 4);
    EXPECT_EQ(one.n_max, four.n_max);
    EXPECT_EQ(one.witness, four.witness);
    EXPECT_EQ(count_distinct_solutions(e, one.witness), 0u);
}

TEST(Avoidance, ScaleLimits)
{
    auto e = Equation::validate({1, 1, -2});
    EXPECT_EQ(kind_of([&] { brute_avoidance(e, max_avoidance_n + 1, AvoidanceMode::NontrivialFree); }), ErrorKind::ScaleExceeded);
}

TEST(Solutions, CountDistinctMatchesEnumeration)
{
    auto e = Equation::validate({1, 1, -2});
    std::vector<std::int64_t> a{1, 2, 3, 5, 7, 9};
    std::uint64_t brute = 0;
    for (auto x : a)
        for (auto y : a)
            for (auto z : a)
                if (x != y && y != z && x != z && x + y == 2 * z)
                    ++brute;
    EXPECT_EQ(count_distinct_solutions(e, a), brute);
}
