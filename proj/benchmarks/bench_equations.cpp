#include <eqgraph/constructions.hpp>
#include <eqgraph/equations.hpp>

#include <benchmark/benchmark.h>

#include <numeric>
#include <random>

using namespace eqgraph;

namespace
{
    auto random_equation(std::size_t k, std::uint64_t seed) -> Equation
    {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::int64_t> pick(-9, 9);
        std::vector<std::int64_t> c;
        std::int64_t sum = 0;
        while (c.size() + 1 < k) {
            auto x = pick(rng);
            if (x != 0 && sum + x != 0) {
                c.push_back(x);
                sum += x;
            }
        }
        c.push_back(-sum);
        return Equation::validate(c);
    }
}

static void BM_Genus(benchmark::State & state)
{
    auto eq = random_equation(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(genus(eq));
}
BENCHMARK(BM_Genus)->Arg(8)->Arg(14)->Arg(20);

static void BM_Behrend(benchmark::State & state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(behrend_set(state.range(0)));
}
BENCHMARK(BM_Behrend)->Arg(10'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

static void BM_BruteAvoidance(benchmark::State & state)
{
    auto eq = Equation::validate({1, 1, -2});
    for (auto _ : state)
        benchmark::DoNotOptimize(brute_avoidance(eq, state.range(0), AvoidanceMode::NontrivialFree));
}
BENCHMARK(BM_BruteAvoidance)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

static void BM_DistinctSolution(benchmark::State & state)
{
    auto eq = Equation::validate({1, -1, 1, 1, -2});
    std::vector<std::int64_t> all(400);
    std::iota(all.begin(), all.end(), 1);
    std::mt19937_64 rng(2);
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<std::int64_t> set(all.begin(), all.begin() + state.range(0));
    std::sort(set.begin(), set.end());
    for (auto _ : state)
        benchmark::DoNotOptimize(find_distinct_solution(eq, set, 400));
}
BENCHMARK(BM_DistinctSolution)->Arg(240)->Arg(400)->Unit(benchmark::kMillisecond);
