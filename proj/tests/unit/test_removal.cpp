#include <eqgraph/error.hpp>
#include <eqgraph/removal.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

using namespace eqgraph;

namespace
{
    // K_{m,m,m} with its decomposition into the m^2 edge-disjoint triangles
    // (i, m + j, 2m + (i + j) mod m).
    auto latin_triangles(std::size_t m) -> std::pair<Graph, FCopyPacking>
    {
        std::vector<Edge> edges;
        FCopyPacking copies;
        for (Vertex i = 0; i < m; ++i)
            for (Vertex j = 0; j < m; ++j) {
                Vertex a = i, b = static_cast<Vertex>(m + j), c = static_cast<Vertex>(2 * m + (i + j) % m);
                edges.push_back(make_edge(a, b));
                edges.push_back(make_edge(b, c));
                edges.push_back(make_edge(a, c));
                copies.push_back({a, b, c});
            }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        return {Graph{3 * m, edges}, copies};
    }

    auto kind_of(auto && f) -> ErrorKind
    {
        try {
            f();
        } catch (const Error & e) {
            return e.kind();
        }
        return ErrorKind::InvalidInput;
    }
}

TEST(Packing, GreedyIsMaximalAndEdgeDisjoint)
{
    std::mt19937_64 rng(5);
    auto k3 = Graph::complete(3);
    for (int trial = 0; trial < 100; ++trial) {
        auto g = oracle::random_graph(rng, 6 + trial % 15, 0.45);
        auto packing = greedy_packing(g, k3);
        EXPECT_FALSE(check_packing(g, k3, packing).has_value());
        std::set<Edge> used;
        for (auto & copy : packing)
            for (auto [a, b] : k3.edges())
                used.insert(make_edge(copy[a], copy[b]));
        for (auto & t : oracle::triangles(g)) {
            bool free = ! used.count(make_edge(t[0], t[1])) && ! used.count(make_edge(t[1], t[2])) && ! used.count(make_edge(t[0], t[2]));
            EXPECT_FALSE(free) << "triangle left unpacked";
        }
    }
}

TEST(Packing, AlignedCopiesRespectParts)
{
    auto [g, planted] = latin_triangles(7);
    std::vector<Vertex> parts(g.n());
    for (Vertex v = 0; v < g.n(); ++v)
        parts[v] = v / 7;
    auto k3 = Graph::complete(3);
    auto packing = greedy_packing(g, k3, &parts);
    EXPECT_FALSE(check_packing(g, k3, packing).has_value());
    EXPECT_LE(packing.size(), planted.size());
    std::set<Edge> used;
    for (auto & copy : packing) {
        for (Vertex i = 0; i < 3; ++i)
            EXPECT_EQ(parts[copy[i]], i);
        for (auto [a, b] : k3.edges())
            used.insert(make_edge(copy[a], copy[b]));
    }
    for (auto & t : oracle::triangles(g))
        EXPECT_TRUE(used.count(make_edge(t[0], t[1])) || used.count(make_edge(t[1], t[2])) || used.count(make_edge(t[0], t[2])));
}

TEST(Packing, CheckFindsProblems)
{
    auto k4 = Graph::complete(4);
    auto k3 = Graph::complete(3);
    EXPECT_TRUE(check_packing(k4, k3, {{0, 1, 2}, {0, 1, 3}}).has_value()) << "shared edge";
    EXPECT_TRUE(check_packing(Graph::cycle(4), k3, {{0, 1, 2}}).has_value()) << "missing edge";
    EXPECT_TRUE(check_packing(k4, k3, {{0, 1, 1}}).has_value()) << "repeated vertex";
    EXPECT_TRUE(check_packing(k4, k3, {{0, 1}}).has_value()) << "short copy";
    EXPECT_TRUE(check_packing(k4, k3, {{0, 1, 9}}).has_value()) << "out of range";
    EXPECT_FALSE(check_packing(k4, k3, {{0, 1, 2}}).has_value());
    EXPECT_EQ(kind_of([] { greedy_packing(Graph::complete(4), Graph::complete(6)); }), ErrorKind::ScaleExceeded);
}

TEST(Uniformize, PlantedInstancesAreUniformFar)
{
    auto k3 = Graph::complete(3);
    for (std::size_t m : {8, 12, 16}) {
        auto [g, copies] = latin_triangles(m);
        const double n = static_cast<double>(g.n());
        for (double eps : {0.02, 0.05, 0.1}) {
            auto r = uniformize(g, k3, copies, eps, 100 + m);
            EXPECT_DOUBLE_EQ(r.eps_prime, eps / 54);
            EXPECT_GE(static_cast<double>(r.aligned) * 27, static_cast<double>(copies.size()));
            auto check = verify_uniform_far(r.subgraph, k3, r.witness);
            EXPECT_TRUE(check.accepted) << check.condition;
            EXPECT_GE(static_cast<double>(r.subgraph.n()), std::sqrt(eps / 27) * n);
            for (std::size_t v = 0; v < r.original.size(); ++v)
                EXPECT_LT(r.original[v], g.n());
        }
    }
}

TEST(Uniformize, Failures)
{
    auto k3 = Graph::complete(3);
    auto [g, copies] = latin_triangles(6);
    EXPECT_EQ(kind_of([&] { uniformize(g, k3, {copies.front()}, 0.05, 1); }), ErrorKind::PackingTooSmall);
    auto bad = copies;
    bad.push_back(copies.front());
    EXPECT_EQ(kind_of([&] { uniformize(g, k3, bad, 0.05, 1); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([&] { uniformize(g, k3, copies, 0.0, 1); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([&] { uniformize(g, k3, copies, 0.05, 1, 0); }), ErrorKind::RetryCapExceeded);
}

TEST(Uniformize, TamperedWitnessRejected)
{
    auto k3 = Graph::complete(3);
    auto [g, copies] = latin_triangles(10);
    auto r = uniformize(g, k3, copies, 0.05, 3);
    ASSERT_TRUE(verify_uniform_far(r.subgraph, k3, r.witness).accepted);
    ASSERT_FALSE(r.witness.copies.empty());

    auto swapped = r.witness;
    std::swap(swapped.copies[0][0], swapped.copies[0][1]);
    auto c = verify_uniform_far(r.subgraph, k3, swapped);
    EXPECT_FALSE(c.accepted);

    auto doubled = r.witness;
    doubled.copies.push_back(doubled.copies.front());
    EXPECT_FALSE(verify_uniform_far(r.subgraph, k3, doubled).accepted);

    auto greedy = r.witness;
    greedy.eps = 0.9;
    EXPECT_FALSE(verify_uniform_far(r.subgraph, k3, greedy).accepted);

    auto dropped = r.witness;
    dropped.copies.resize(1);
    EXPECT_FALSE(verify_uniform_far(r.subgraph, k3, dropped).accepted);
}

TEST(Counting, P4AndC5AgreeWithOracle)
{
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 120; ++trial) {
        auto n = 4 + static_cast<std::size_t>(trial % 14);
        auto g = oracle::random_graph(rng, n, 0.2 + 0.05 * (trial % 10));
        std::vector<Vertex> parts(n);
        std::uniform_int_distribution<Vertex> pick(0, 3);
        for (auto & p : parts)
            p = pick(rng);
        EXPECT_EQ(count_p4_aligned(g, parts), BigCount{oracle::p4_aligned(g, parts)});
        EXPECT_EQ(count_c5(g), BigCount{oracle::c5_count(g)});
    }
    EXPECT_EQ(count_c5(Graph::petersen()), BigCount{12});
    EXPECT_EQ(count_c5(Graph::complete(5)), BigCount{12});
    EXPECT_EQ(count_c5(Graph::cycle(5)), BigCount{1});
    EXPECT_EQ(count_c5(Graph::cycle(6)), BigCount{0});
    EXPECT_EQ(count_c5(Graph::complete(7)), BigCount{21 * 12});
    EXPECT_EQ(kind_of([] { count_c5(Graph{max_c5_vertices + 1, {}}); }), ErrorKind::ScaleExceeded);
}

TEST(DenseCore, ReportIsConsistent)
{
    auto [g, copies] = latin_triangles(12);
    auto r = dense_core_c5(g, 0.01, 4);
    EXPECT_EQ(r.n, g.n());
    EXPECT_EQ(r.packing, greedy_packing(g, Graph::complete(3)).size());
    EXPECT_DOUBLE_EQ(r.p, static_cast<double>(r.packing) / (36.0 * 36.0));
    EXPECT_GE(static_cast<double>(r.aligned) * 5, static_cast<double>(r.packing));
    EXPECT_FALSE(r.core_a.empty());
    EXPECT_FALSE(r.core_b.empty());
    ASSERT_EQ(r.yields.size(), r.core_b.size());
    BigCount total = 0;
    for (auto & y : r.yields)
        total += y;
    EXPECT_EQ(total, r.total_yield);
    ASSERT_TRUE(r.c5.has_value());
    EXPECT_EQ(*r.c5, BigCount{oracle::c5_count(g)});
    for (auto v : r.core_a)
        EXPECT_EQ(r.parts[v], 0u);
    for (auto v : r.core_b)
        EXPECT_EQ(r.parts[v], 1u);
    EXPECT_EQ(kind_of([] { dense_core_c5(Graph::cycle(6), 0.01, 1); }), ErrorKind::NoTriangles);
    EXPECT_EQ(kind_of([&] { dense_core_c5(g, 1.5, 1); }), ErrorKind::InvalidInput);
}
