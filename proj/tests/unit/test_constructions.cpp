#include <eqgraph/constructions.hpp>
#include <eqgraph/equations.hpp>
#include <eqgraph/error.hpp>
#include <eqgraph/removal.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

using namespace eqgraph;

TEST(Behrend, BaselineIsShiftedTernary)
{
    for (std::int64_t n : {1, 2, 3, 10, 27, 100, 1000}) {
        auto base = ternary_baseline(n);
        EXPECT_EQ(static_cast<std::int64_t>(base.size()), oracle::ternary_count(n)) << n;
        EXPECT_TRUE(std::is_sorted(base.begin(), base.end()));
        EXPECT_TRUE(oracle::progression_free(base));
        if (! base.empty()) {
            EXPECT_EQ(base.front(), 1);
            EXPECT_LE(base.back(), n);
        }
    }
}

TEST(Behrend, FreeAndAtLeastBaseline)
{
    for (std::int64_t n : {1, 5, 50, 500, 2000, 10000}) {
        auto b = behrend_set(n);
        EXPECT_EQ(b.n, n);
        EXPECT_TRUE(oracle::progression_free(b.members)) << n;
        EXPECT_GE(b.members.size(), ternary_baseline(n).size());
        ASSERT_FALSE(b.members.empty());
        EXPECT_GE(b.members.front(), 1);
        EXPECT_LE(b.members.back(), n);
        if (b.from_baseline) {
            EXPECT_EQ(b.members, ternary_baseline(n));
        }
    }
    EXPECT_THROW(behrend_set(max_behrend_n + 1), Error);
}

TEST(Behrend, ProgressionCheckAgreesWithOracle)
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        std::set<std::int64_t> s;
        std::uniform_int_distribution<std::int64_t> pick(1, 60);
        for (int i = 0, k = 2 + trial % 12; i < k; ++i)
            s.insert(pick(rng));
        std::vector<std::int64_t> v(s.begin(), s.end());
        EXPECT_EQ(is_progression_free(v), oracle::progression_free(v));
    }
}

TEST(RuzsaSzemeredi, TrianglesAreTheCanonicalCopies)
{
    for (std::int64_t n : {5, 12, 20}) {
        auto a = behrend_set(n).members;
        auto rs = rs_graph(Graph::complete(3), ColourOrdering::identity(3), n, a);
        EXPECT_EQ(rs.graph.n(), 9u * static_cast<std::size_t>(n));
        EXPECT_EQ(rs.packing.size(), static_cast<std::size_t>(n) * a.size());
        EXPECT_EQ(rs.dropped, 0u);
        FCopyPacking packing;
        for (auto & copy : rs.packing)
            packing.push_back(copy.vertices);
        EXPECT_FALSE(check_packing(rs.graph, Graph::complete(3), packing).has_value());
        // every triangle is (x, x + a, x + 2a) for some a in A, one per such x in [1, 3N]
        auto tri = oracle::triangles(rs.graph);
        std::size_t expected = 0;
        for (auto m : a)
            expected += static_cast<std::size_t>(std::max<std::int64_t>(0, 3 * n - 2 * m));
        EXPECT_EQ(tri.size(), expected) << n;
        for (auto & t : tri) {
            auto [p0, y0] = rs_value(rs, t[0]);
            auto [p1, y1] = rs_value(rs, t[1]);
            auto [p2, y2] = rs_value(rs, t[2]);
            EXPECT_EQ(p0, 0u);
            EXPECT_EQ(p1, 1u);
            EXPECT_EQ(p2, 2u);
            EXPECT_EQ(y1 - y0, y2 - y1);
            EXPECT_TRUE(std::binary_search(a.begin(), a.end(), y1 - y0));
        }
        for (auto & copy : rs.packing)
            for (Vertex v = 0; v < 3; ++v) {
                auto [part, y] = rs_value(rs, copy.vertices[v]);
                EXPECT_EQ(part, v);
                EXPECT_EQ(y, copy.x + static_cast<std::int64_t>(v) * copy.a);
            }
    }
}

TEST(RuzsaSzemeredi, ProgressionGivesExtraTriangle)
{
    // {1, 2, 3} contains 1 + 3 = 2 * 2
    auto rs = rs_graph(Graph::complete(3), ColourOrdering::identity(3), 6, std::vector<std::int64_t>{1, 2, 3});
    EXPECT_GT(oracle::triangles(rs.graph).size(), rs.packing.size());
}

TEST(RuzsaSzemeredi, RejectsBadInput)
{
    auto id = ColourOrdering::identity(3);
    EXPECT_THROW(rs_graph(Graph::complete(3), id, 5, std::vector<std::int64_t>{0, 2}), Error);
    EXPECT_THROW(rs_graph(Graph::complete(3), id, 5, std::vector<std::int64_t>{2, 2}), Error);
    EXPECT_THROW(rs_graph(Graph::complete(3), id, 5, std::vector<std::int64_t>{6}), Error);
    EXPECT_THROW(rs_graph(Graph::complete(3), ColourOrdering::identity(2), 5, std::vector<std::int64_t>{1}), Error);
    EXPECT_THROW(rs_graph(Graph::complete(7), ColourOrdering::identity(7), 5, std::vector<std::int64_t>{1}), Error);
}

TEST(GraphGn, SizesAndTriangleFree)
{
    for (unsigned n = 1; n <= max_g_n; ++n) {
        auto g = g_n(n);
        EXPECT_EQ(g.n(), n + 2 * (std::size_t{1} << n));
        EXPECT_TRUE(oracle::triangles(g).empty()) << n;
        auto parts = g_n_parts(n, false);
        ASSERT_EQ(parts.size(), g.n());
        for (auto [u, v] : g.edges())
            EXPECT_NE(parts[u], parts[v]);
    }
    EXPECT_THROW(g_n(max_g_n + 1), Error);
    auto f = fig5_graph();
    EXPECT_EQ(f.n(), 15u);
    EXPECT_EQ(f.edge_count(), 30u);
    EXPECT_TRUE(oracle::triangles(f).empty());
    auto parts = g_n_parts(3, true);
    EXPECT_EQ(std::count(parts.begin(), parts.end(), Vertex{0}), 3);
    EXPECT_EQ(std::count(parts.begin(), parts.end(), Vertex{1}), 6);
    EXPECT_EQ(std::count(parts.begin(), parts.end(), Vertex{2}), 6);
}

TEST(GenusSplit, HalvesAreZeroSum)
{
    for (auto coeffs : std::vector<std::vector<std::int64_t>>{
             {1, 1, -1, -1}, {1, 2, -3, 1, -1}, {2, -1, -1, 3, -3, 1, -1}, {5, -2, -3, 4, -4}}) {
        auto eq = Equation::validate(coeffs);
        auto split = genus_split(eq);
        EXPECT_EQ(std::accumulate(split.a.begin(), split.a.end(), std::int64_t{0}), 0);
        EXPECT_EQ(std::accumulate(split.b.begin(), split.b.end(), std::int64_t{0}), 0);
        std::vector<std::size_t> all = split.x_indices;
        all.insert(all.end(), split.y_indices.begin(), split.y_indices.end());
        std::sort(all.begin(), all.end());
        std::vector<std::size_t> want(coeffs.size());
        std::iota(want.begin(), want.end(), 0);
        EXPECT_EQ(all, want);
        for (std::size_t i = 0; i < split.x_indices.size(); ++i)
            EXPECT_EQ(split.a[i], coeffs[split.x_indices[i]]);
        for (std::size_t j = 0; j < split.y_indices.size(); ++j)
            EXPECT_EQ(split.b[j], coeffs[split.y_indices[j]]);
    }
    try {
        genus_split(Equation::validate({1, 1, -2}));
        FAIL();
    } catch (const Error & e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotGenusTwo);
    }
}

TEST(LayeredGraph, RecoversPairs)
{
    auto split = genus_split(Equation::validate({1, 2, -3, 1, -1}));
    std::vector<std::int64_t> set{1, 4, 6, 9, 13};
    LayeredGraph lg(split, set);
    EXPECT_EQ(lg.layers(), split.a.size() + split.b.size() - 1);
    EXPECT_EQ(lg.path_count(), set.size() * (set.size() - 1));
    for (std::size_t p = 0; p < lg.path_count(); ++p) {
        auto path = lg.path(p);
        ASSERT_EQ(path.size(), lg.layers());
        for (std::size_t layer = 0; layer + 1 < lg.layers(); ++layer) {
            auto rec = lg.recover_pair(layer, lg.value(layer, path[layer]), lg.value(layer + 1, path[layer + 1]));
            ASSERT_TRUE(rec.has_value());
            EXPECT_EQ(*rec, lg.pair(p));
        }
    }
}

TEST(DistinctSolve, AssignmentsAreDistinctSolutions)
{
    std::mt19937_64 rng(11);
    for (auto coeffs : std::vector<std::vector<std::int64_t>>{{1, 1, -1, -1}, {1, 2, -3, 1, -1}, {2, -2, 1, -1}}) {
        auto eq = Equation::validate(coeffs);
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<std::int64_t> all(300);
            std::iota(all.begin(), all.end(), 1);
            std::shuffle(all.begin(), all.end(), rng);
            std::vector<std::int64_t> set(all.begin(), all.begin() + 120);
            std::sort(set.begin(), set.end());
            auto r = find_distinct_solution(eq, set, 300, 200000);
            if (! r.assignment) {
                EXPECT_EQ(r.mode, SolveMode::Abstain);
                continue;
            }
            auto & x = *r.assignment;
            ASSERT_EQ(x.size(), coeffs.size());
            std::int64_t sum = 0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                sum += coeffs[i] * x[i];
                EXPECT_TRUE(std::binary_search(set.begin(), set.end(), x[i]));
            }
            EXPECT_EQ(sum, 0);
            EXPECT_EQ(std::set<std::int64_t>(x.begin(), x.end()).size(), x.size());
            EXPECT_EQ(classify_solution(eq, x), SolutionClass::AllDistinct);
        }
    }
    EXPECT_THROW(find_distinct_solution(Equation::validate({1, 1, -2}), std::vector<std::int64_t>{1, 2, 3}, 3), Error);
}

TEST(DistinctSolve, ProgressionFreeSetsStillSolveGenusTwo)
{
    auto eq = Equation::validate({1, 1, -1, -1});
    auto set = behrend_set(400).members;
    auto r = find_distinct_solution(eq, set, 400);
    ASSERT_TRUE(r.assignment.has_value());
    EXPECT_EQ(count_distinct_solutions(eq, set) > 0, true);
}
