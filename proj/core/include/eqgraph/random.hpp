#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace eqgraph
{
    // std::uniform_int_distribution and std::shuffle are implementation
    // defined; these helpers keep seeded output identical across standard
    // libraries.
    using Rng = std::mt19937_64;

    inline auto uniform_below(Rng & rng, std::uint64_t bound) -> std::uint64_t
    {
        if (bound <= 1)
            return 0;
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t x;
        do
            x = rng();
        while (x >= limit);
        return x % bound;
    }

    inline auto uniform_real(Rng & rng) -> double
    {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;
    }

    template <typename T>
    auto shuffle(std::span<T> items, Rng & rng) -> void
    {
        for (std::size_t i = items.size(); i > 1; --i)
            std::swap(items[i - 1], items[uniform_below(rng, i)]);
    }
}
