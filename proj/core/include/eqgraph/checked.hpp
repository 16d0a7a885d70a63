#pragma once

#include <eqgraph/error.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace eqgraph
{
    using BigCount = boost::multiprecision::cpp_int;

    // 64-bit arithmetic that throws instead of wrapping.
    inline auto checked_add(std::int64_t a, std::int64_t b) -> std::int64_t
    {
        std::int64_t r;
        if (__builtin_add_overflow(a, b, &r))
            throw Error(ErrorKind::Overflow, std::to_string(a) + " + " + std::to_string(b));
        return r;
    }

    inline auto checked_sub(std::int64_t a, std::int64_t b) -> std::int64_t
    {
        std::int64_t r;
        if (__builtin_sub_overflow(a, b, &r))
            throw Error(ErrorKind::Overflow, std::to_string(a) + " - " + std::to_string(b));
        return r;
    }

    inline auto checked_mul(std::int64_t a, std::int64_t b) -> std::int64_t
    {
        std::int64_t r;
        if (__builtin_mul_overflow(a, b, &r))
            throw Error(ErrorKind::Overflow, std::to_string(a) + " * " + std::to_string(b));
        return r;
    }

    /// Counter that stays on a machine word until it would overflow, then
    /// continues in arbitrary precision.
    class WideCounter
    {
    public:
        auto add(std::uint64_t x) -> void
        {
            if (_promoted) {
                _big += x;
                return;
            }
            std::uint64_t r;
            if (__builtin_add_overflow(_small, x, &r)) {
                _promoted = true;
                _big = _small;
                _big += x;
            }
            else
                _small = r;
        }

        auto add_product(std::uint64_t a, std::uint64_t b) -> void
        {
            std::uint64_t r;
            if (! _promoted && ! __builtin_mul_overflow(a, b, &r)) {
                add(r);
                return;
            }
            BigCount p = a;
            p *= b;
            promote();
            _big += p;
        }

        [[nodiscard]] auto value() const -> BigCount { return _promoted ? _big : BigCount{_small}; }
        [[nodiscard]] auto promoted() const -> bool { return _promoted; }

    private:
        auto promote() -> void
        {
            if (! _promoted) {
                _promoted = true;
                _big = _small;
            }
        }

        std::uint64_t _small = 0;
        BigCount _big;
        bool _promoted = false;
    };
}
