#include <eqgraph/error.hpp>
#include <eqgraph/graph.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

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

    auto mod3(std::int64_t x) -> std::int64_t
    {
        return ((x % 3) + 3) % 3;
    }
}

TEST(Graph, ConstructionChecks)
{
    EXPECT_EQ(kind_of([] { Graph(3, {{0, 0}}); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([] { Graph(3, {{0, 1}, {1, 0}}); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([] { Graph(3, {{0, 3}}); }), ErrorKind::InvalidInput);
    Graph g(4, {{2, 1}, {0, 3}, {0, 1}});
    EXPECT_EQ(std::vector<Edge>(g.edges().begin(), g.edges().end()), (std::vector<Edge>{{0, 1}, {0, 3}, {1, 2}}));
    EXPECT_EQ(g.edge_id(3, 0), std::optional<std::size_t>{1});
    EXPECT_FALSE(g.edge_id(2, 3).has_value());
    EXPECT_TRUE(g.has_edge(2, 1));
}

TEST(Graph, Factories)
{
    EXPECT_EQ(Graph::complete(5).edge_count(), 10u);
    EXPECT_EQ(Graph::cycle(7).edge_count(), 7u);
    EXPECT_EQ(Graph::path(7).edge_count(), 6u);
    auto p = Graph::petersen();
    EXPECT_EQ(p.n(), 10u);
    EXPECT_EQ(p.edge_count(), 15u);
    for (Vertex v = 0; v < 10; ++v) {
        EXPECT_EQ(p.degree(v), 3u);
        auto nb = p.neighbours(v);
        EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
    }
    EXPECT_TRUE(oracle::triangles(p).empty());
    std::size_t four = 0;
    for (auto & c : oracle::all_cycles(p))
        four += c.size() == 4;
    EXPECT_EQ(four, 0u);
}

TEST(Graph, ComponentsAndInduced)
{
    Graph g(6, {{0, 1}, {1, 2}, {3, 4}});
    EXPECT_EQ(g.components(), (std::vector<std::size_t>{0, 0, 0, 1, 1, 2}));
    EXPECT_EQ(g.component_count(), 3u);
    std::vector<Vertex> keep{1, 2, 4};
    auto h = g.induced(keep);
    EXPECT_EQ(h.n(), 3u);
    EXPECT_EQ(h.edge_count(), 1u);
    EXPECT_TRUE(h.has_edge(0, 1));
}

TEST(Coloured, Validation)
{
    auto k3 = Graph::complete(3);
    EXPECT_NO_THROW(validate_coloured(Graph::cycle(6), k3, {0, 1, 2, 0, 1, 2}));
    EXPECT_EQ(kind_of([&] { validate_coloured(Graph::cycle(4), k3, {0, 0, 1, 2}); }), ErrorKind::NotAHomomorphism);
    EXPECT_EQ(kind_of([&] { validate_coloured(Graph::cycle(4), k3, {0, 1, 0}); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([&] { validate_coloured(Graph::cycle(4), k3, {0, 1, 0, 3}); }), ErrorKind::InvalidInput);
}

TEST(Ordering, ValidationAndPermutations)
{
    EXPECT_EQ(kind_of([] { ColourOrdering::validate({1, 1, 2}); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([] { ColourOrdering::validate({0, 1, 2}); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([] { ColourOrdering::validate({1, 2, ColourOrdering::max_value + 1}); }), ErrorKind::InvalidInput);
    auto all = ColourOrdering::all_permutations(3);
    ASSERT_EQ(all.size(), 6u);
    EXPECT_EQ(all.front(), ColourOrdering::identity(3));
    for (std::size_t i = 1; i < all.size(); ++i)
        EXPECT_TRUE(std::lexicographical_compare(all[i - 1].values().begin(), all[i - 1].values().end(), all[i].values().begin(),
            all[i].values().end()));
}

TEST(Hom, SmallCases)
{
    auto k2 = Graph::complete(2), k3 = Graph::complete(3);
    EXPECT_EQ(hom_exists(Graph::cycle(5), k2).outcome, HomOutcome::NotFound);
    auto even = hom_exists(Graph::cycle(6), k2);
    ASSERT_EQ(even.outcome, HomOutcome::Found);
    EXPECT_TRUE(is_homomorphism(Graph::cycle(6), k2, even.mapping));
    auto p = hom_exists(Graph::petersen(), k3);
    ASSERT_EQ(p.outcome, HomOutcome::Found);
    EXPECT_TRUE(is_homomorphism(Graph::petersen(), k3, p.mapping));
    EXPECT_EQ(hom_exists(Graph::complete(4), k3).outcome, HomOutcome::NotFound);
    EXPECT_EQ(hom_exists(Graph::complete(12), Graph::complete(11), 50).outcome, HomOutcome::BudgetExhausted);
}

TEST(Hom, AgreesWithBipartiteness)
{
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        auto g = oracle::random_graph(rng, 4 + trial % 12, 0.25);
        auto r = hom_exists(g, Graph::complete(2));
        EXPECT_EQ(r.outcome == HomOutcome::Found, oracle::is_bipartite(g));
    }
}

TEST(BlowUp, SizesAndColours)
{
    auto c = validate_coloured(Graph::path(3), Graph::complete(2), {0, 1, 0});
    std::vector<std::size_t> sizes{2, 1, 3};
    auto b = blow_up(c, sizes);
    EXPECT_EQ(b.host.n(), 6u);
    EXPECT_EQ(b.host.edge_count(), 2u * 1 + 1u * 3);
    EXPECT_EQ(b.sigma, (std::vector<Vertex>{0, 0, 1, 0, 0, 0}));
    std::vector<std::size_t> zero{1, 0, 1};
    EXPECT_EQ(kind_of([&] { blow_up(c, zero); }), ErrorKind::ZeroSize);
}

TEST(Cycles, EnumerationMatchesOracle)
{
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 150; ++trial) {
        auto g = oracle::random_graph(rng, 3 + trial % 8, 0.45);
        auto list = enumerate_cycles(g);
        EXPECT_FALSE(list.truncated());
        std::set<std::vector<Vertex>> got(list.cycles.begin(), list.cycles.end());
        EXPECT_EQ(got.size(), list.cycles.size()) << "a cycle was listed twice";
        EXPECT_EQ(got, oracle::all_cycles(g));
        for (auto & c : list.cycles) {
            EXPECT_EQ(canonical_cycle(c), c);
            EXPECT_NO_THROW(check_cycle(g, c));
        }
    }
}

TEST(Cycles, Caps)
{
    auto k6 = Graph::complete(6);
    auto by_count = enumerate_cycles(k6, 10);
    EXPECT_TRUE(by_count.truncated_by_count);
    EXPECT_EQ(by_count.cycles.size(), 10u);
    auto by_length = enumerate_cycles(k6, default_max_cycles, 4);
    EXPECT_TRUE(by_length.truncated_by_length);
    EXPECT_TRUE(std::all_of(by_length.cycles.begin(), by_length.cycles.end(), [](auto & c) { return c.size() <= 4; }));
    EXPECT_EQ(by_length.cycles.size(), 20u + 45u);
}

TEST(Cycles, BasisSize)
{
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        auto g = oracle::random_graph(rng, 2 + trial % 15, 0.3);
        auto basis = cycle_basis(g);
        EXPECT_EQ(basis.size() + g.n(), g.edge_count() + g.component_count());
        for (auto & c : basis)
            EXPECT_NO_THROW(check_cycle(g, c));
    }
}

TEST(Cycles, CheckCycleRejects)
{
    auto g = Graph::cycle(5);
    EXPECT_EQ(kind_of([&] { check_cycle(g, std::vector<Vertex>{0, 1, 2}); }), ErrorKind::NotACycle);
    EXPECT_EQ(kind_of([&] { check_cycle(g, std::vector<Vertex>{0, 1, 0, 1}); }), ErrorKind::NotACycle);
    EXPECT_EQ(kind_of([&] { check_cycle(g, std::vector<Vertex>{0, 1}); }), ErrorKind::NotACycle);
}

TEST(Wrap, WalksAndCycles)
{
    auto c6 = validate_coloured(Graph::cycle(6), Graph::complete(3), {0, 1, 2, 0, 1, 2});
    EXPECT_EQ(cycle_wrap(c6, std::vector<Vertex>{0, 1, 2, 3, 4, 5}), 6);
    EXPECT_EQ(cycle_wrap(c6, std::vector<Vertex>{0, 5, 4, 3, 2, 1}), -6);
    EXPECT_EQ(wrap(c6, std::vector<Vertex>{0, 1, 2, 1, 0}), 0);
    EXPECT_EQ(wrap(c6, std::vector<Vertex>{0, 1, 2}), 2);
    EXPECT_EQ(kind_of([&] { wrap(c6, std::vector<Vertex>{0, 2}); }), ErrorKind::NotAWalk);
    auto c4 = validate_coloured(Graph::cycle(4), Graph::cycle(4), {0, 1, 2, 3});
    EXPECT_EQ(kind_of([&] { cycle_wrap(c4, std::vector<Vertex>{0, 1, 2, 3}); }), ErrorKind::PatternNotK3);
}

TEST(Levels, MapOrWrappedCycle)
{
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 200; ++trial) {
        auto [g, sigma] = oracle::random_k3_coloured(rng, 3 + trial % 9, 0.4);
        auto cg = validate_coloured(g, Graph::complete(3), sigma);
        auto lm = colour_hom_to_P3inf(cg);
        ASSERT_NE(lm.levels.has_value(), lm.wrapped_cycle.has_value());
        if (lm.levels) {
            auto & lv = *lm.levels;
            for (Vertex v = 0; v < g.n(); ++v)
                EXPECT_EQ(mod3(lv[v]), sigma[v]);
            for (auto [u, v] : g.edges())
                EXPECT_EQ(std::abs(lv[u] - lv[v]), 1);
        }
        else {
            EXPECT_NO_THROW(check_cycle(g, *lm.wrapped_cycle));
            EXPECT_NE(oracle::wrap_of_cycle(*lm.wrapped_cycle, sigma), 0);
        }
    }
}

TEST(Increasing, Triangle)
{
    auto t = validate_coloured(Graph::complete(3), Graph::complete(3), {0, 1, 2});
    auto inc = has_increasing_cycle(t, ColourOrdering::identity(3));
    ASSERT_TRUE(inc.has_value());
    EXPECT_EQ(*inc, (std::vector<Vertex>{0, 1, 2}));
    auto c6 = validate_coloured(Graph::cycle(6), Graph::complete(3), {0, 1, 2, 0, 1, 2});
    EXPECT_FALSE(has_increasing_cycle(c6, ColourOrdering::identity(3)).has_value());
}

TEST(CycleOrder, SingleCycleOnly)
{
    Graph g(5, {{0, 3}, {3, 1}, {1, 4}, {4, 2}, {2, 0}});
    auto order = cycle_order(g);
    ASSERT_EQ(order.size(), 5u);
    EXPECT_NO_THROW(check_cycle(g, order));
    EXPECT_EQ(kind_of([] { cycle_order(Graph::path(4)); }), ErrorKind::NotACycle);
    EXPECT_EQ(kind_of([] { cycle_order(Graph(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}})); }), ErrorKind::NotACycle);
}
