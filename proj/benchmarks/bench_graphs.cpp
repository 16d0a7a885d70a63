#include <eqgraph/abundance.hpp>
#include <eqgraph/constructions.hpp>
#include <eqgraph/cycle_equations.hpp>
#include <eqgraph/fixtures.hpp>
#include <eqgraph/removal.hpp>

#include <benchmark/benchmark.h>

#include <random>

using namespace eqgraph;

namespace
{
    auto random_graph(std::size_t n, double p, std::uint64_t seed) -> Graph
    {
        std::mt19937_64 rng(seed);
        std::bernoulli_distribution coin(p);
        std::vector<Edge> edges;
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v)
                if (coin(rng))
                    edges.emplace_back(u, v);
        return Graph{n, edges};
    }
}

static void BM_EnumerateCycles(benchmark::State & state)
{
    auto g = random_graph(static_cast<std::size_t>(state.range(0)), 0.3, 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(enumerate_cycles(g));
}
BENCHMARK(BM_EnumerateCycles)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

static void BM_HomToK3(benchmark::State & state)
{
    auto g = blow_up(fig2_petersen_target(), std::vector<std::size_t>(10, static_cast<std::size_t>(state.range(0)))).host;
    for (auto _ : state)
        benchmark::DoNotOptimize(hom_exists(g, Graph::complete(3)));
}
BENCHMARK(BM_HomToK3)->Arg(1)->Arg(8);

static void BM_VerifyCertificate(benchmark::State & state)
{
    auto cert = fig2_petersen_certificate();
    for (auto _ : state)
        benchmark::DoNotOptimize(verify_certificate(cert));
}
BENCHMARK(BM_VerifyCertificate);

static void BM_CanonicalForm(benchmark::State & state)
{
    auto g = build_Hm(bijective_seed(Graph::complete(3)), static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(canonical_form(g));
}
BENCHMARK(BM_CanonicalForm)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_GenusOneSearch(benchmark::State & state)
{
    auto g = validate_coloured(Graph::petersen(), Graph::complete(3), fig2_petersen_target().sigma);
    auto c = ColourOrdering::identity(3);
    for (auto _ : state)
        benchmark::DoNotOptimize(genus_one_combination_search(g, c));
}
BENCHMARK(BM_GenusOneSearch)->Unit(benchmark::kMillisecond);

static void BM_CountC5(benchmark::State & state)
{
    auto g = random_graph(static_cast<std::size_t>(state.range(0)), 0.2, 5);
    for (auto _ : state)
        benchmark::DoNotOptimize(count_c5(g));
}
BENCHMARK(BM_CountC5)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_GreedyTrianglePacking(benchmark::State & state)
{
    auto g = random_graph(static_cast<std::size_t>(state.range(0)), 0.3, 6);
    for (auto _ : state)
        benchmark::DoNotOptimize(greedy_packing(g, Graph::complete(3)));
}
BENCHMARK(BM_GreedyTrianglePacking)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

static void BM_RSGraph(benchmark::State & state)
{
    auto a = behrend_set(state.range(0)).members;
    for (auto _ : state)
        benchmark::DoNotOptimize(rs_graph(Graph::complete(3), ColourOrdering::identity(3), state.range(0), a));
}
BENCHMARK(BM_RSGraph)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
