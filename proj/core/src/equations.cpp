#include <eqgraph/checked.hpp>
#include <eqgraph/equations.hpp>
#include <eqgraph/error.hpp>

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdlib>
#include <future>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

using std::int64_t;
using std::size_t;
using std::span;
using std::string;
using std::uint32_t;
using std::uint64_t;
using std::vector;

namespace eqgraph
{
    auto to_string(ErrorKind kind) -> std::string_view
    {
        switch (kind) {
        case ErrorKind::ZeroCoefficient: return "ZeroCoefficient";
        case ErrorKind::NonzeroSum: return "NonzeroSum";
        case ErrorKind::TooShort: return "TooShort";
        case ErrorKind::CoefficientOutOfRange: return "CoefficientOutOfRange";
        case ErrorKind::Overflow: return "Overflow";
        case ErrorKind::TooManyVariables: return "TooManyVariables";
        case ErrorKind::LengthMismatch: return "LengthMismatch";
        case ErrorKind::ScaleExceeded: return "ScaleExceeded";
        case ErrorKind::NotAHomomorphism: return "NotAHomomorphism";
        case ErrorKind::NotAWalk: return "NotAWalk";
        case ErrorKind::PatternNotK3: return "PatternNotK3";
        case ErrorKind::ZeroSize: return "ZeroSize";
        case ErrorKind::NotACycle: return "NotACycle";
        case ErrorKind::Truncated: return "Truncated";
        case ErrorKind::NotSurjective: return "NotSurjective";
        case ErrorKind::NotGenusTwo: return "NotGenusTwo";
        case ErrorKind::PackingTooSmall: return "PackingTooSmall";
        case ErrorKind::NoTriangles: return "NoTriangles";
        case ErrorKind::RetryCapExceeded: return "RetryCapExceeded";
        case ErrorKind::BudgetExhausted: return "BudgetExhausted";
        case ErrorKind::InvalidInput: return "InvalidInput";
        }
        return "Unknown";
    }

    auto Equation::validate(vector<int64_t> coeffs) -> Equation
    {
        if (coeffs.size() < 2)
            throw Error(ErrorKind::TooShort, "an equation needs at least two variables");
        int64_t sum = 0;
        for (size_t i = 0; i < coeffs.size(); ++i) {
            if (coeffs[i] == 0)
                throw Error(ErrorKind::ZeroCoefficient, "coefficient " + std::to_string(i + 1) + " is zero");
            if (coeffs[i] > max_abs_coefficient || coeffs[i] < -max_abs_coefficient)
                throw Error(ErrorKind::CoefficientOutOfRange, "coefficient " + std::to_string(coeffs[i]) + " exceeds 2^31");
            sum += coeffs[i];
        }
        if (sum != 0)
            throw Error(ErrorKind::NonzeroSum, "coefficients sum to " + std::to_string(sum));
        return Equation{std::move(coeffs)};
    }

    auto parse_coefficient_list(std::string_view text) -> vector<int64_t>
    {
        vector<int64_t> result;
        size_t pos = 0;
        while (pos <= text.size()) {
            auto comma = text.find(',', pos);
            if (comma == std::string_view::npos)
                comma = text.size();
            auto token = text.substr(pos, comma - pos);
            while (! token.empty() && (token.front() == ' ' || token.front() == '\t'))
                token.remove_prefix(1);
            while (! token.empty() && (token.back() == ' ' || token.back() == '\t'))
                token.remove_suffix(1);
            if (! token.empty() && token.front() == '+')
                token.remove_prefix(1);
            int64_t value = 0;
            auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
            if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size())
                throw Error(ErrorKind::InvalidInput, "cannot parse coefficient '" + string{token} + "'");
            result.push_back(value);
            pos = comma + 1;
        }
        return result;
    }

    auto format_coefficient_list(span<const int64_t> coeffs) -> string
    {
        std::ostringstream out;
        for (size_t i = 0; i < coeffs.size(); ++i)
            out << (i ? "," : "") << coeffs[i];
        return out.str();
    }

    namespace
    {
        struct GenusSearch
        {
            size_t k;
            std::unordered_set<uint32_t> zero_sum;
            vector<vector<uint32_t>> by_lowest; // zero-sum masks grouped by lowest index
            std::unordered_map<uint32_t, std::pair<unsigned, uint32_t>> memo;

            auto best(uint32_t s) -> unsigned
            {
                if (s == 0)
                    return 0;
                if (auto it = memo.find(s); it != memo.end())
                    return it->second.first;

                const unsigned low = std::countr_zero(s);
                const uint32_t rest = s & ~(uint32_t{1} << low);
                const unsigned bound = std::popcount(s) / 2;
                unsigned best_value = 1;
                uint32_t best_part = s;

                auto consider = [&](uint32_t t) -> bool {
                    if (t == s) {
                        return false;
                    }
                    auto v = 1 + best(s & ~t);
                    if (v > best_value) {
                        best_value = v;
                        best_part = t;
                    }
                    return best_value >= bound;
                };

                const auto & group = by_lowest[low];
                const uint64_t submasks = uint64_t{1} << std::popcount(rest);
                if (group.size() < submasks) {
                    for (auto t : group)
                        if ((t & ~s) == 0 && consider(t))
                            break;
                }
                else {
                    // enumerate submasks of rest, smallest first
                    for (uint32_t sub = 0;;) {
                        uint32_t t = sub | (uint32_t{1} << low);
                        if (zero_sum.contains(t) && consider(t))
                            break;
                        sub = (sub - rest) & rest;
                        if (sub == 0)
                            break;
                    }
                }

                memo.emplace(s, std::pair{best_value, best_part});
                return best_value;
            }
        };
    }

    auto genus(const Equation & eq) -> GenusResult
    {
        const size_t k = eq.size();
        if (k > max_genus_variables)
            throw Error(ErrorKind::TooManyVariables, "genus search is limited to " + std::to_string(max_genus_variables) + " variables, got " + std::to_string(k));

        GenusSearch search{k, {}, vector<vector<uint32_t>>(k), {}};

        // Gray-code walk over all nonempty masks keeps a running sum.
        const uint32_t full = (k == 32) ? ~uint32_t{0} : ((uint32_t{1} << k) - 1);
        int64_t sum = 0;
        uint32_t mask = 0;
        for (uint64_t i = 1; i <= full; ++i) {
            const unsigned bit = std::countr_zero(i);
            mask ^= uint32_t{1} << bit;
            sum += (mask >> bit & 1) ? eq[bit] : -eq[bit];
            if (sum == 0) {
                search.zero_sum.insert(mask);
                search.by_lowest[std::countr_zero(mask)].push_back(mask);
            }
        }
        for (auto & g : search.by_lowest)
            std::sort(g.begin(), g.end(), [](uint32_t a, uint32_t b) {
                auto pa = std::popcount(a), pb = std::popcount(b);
                return pa != pb ? pa < pb : a < b;
            });

        GenusResult result;
        result.genus = search.best(full);

        uint32_t s = full;
        while (s != 0) {
            const auto & [value, part] = search.memo.at(s);
            vector<size_t> indices;
            for (size_t i = 0; i < k; ++i)
                if (part >> i & 1)
                    indices.push_back(i);
            result.witness.parts.push_back(std::move(indices));
            result.witness.part_sums.push_back(0);
            s &= ~part;
            if (s != 0 && ! search.memo.contains(s))
                search.best(s);
        }
        return result;
    }

    auto has_proper_zero_sum_subset(span<const int64_t> coeffs) -> bool
    {
        // A proper nonempty zero-sum subset exists iff one avoids the last
        // index (else take the complement).
        if (coeffs.size() < 2)
            return false;
        auto items = coeffs.first(coeffs.size() - 1);

        int64_t positive = 0, negative = 0;
        for (auto a : items)
            (a > 0 ? positive : negative) = checked_add(a > 0 ? positive : negative, std::abs(a));

        const int64_t width = positive + negative + 1;
        if (width <= (int64_t{1} << 24)) {
            // bit s + negative set: some nonempty subset sums to s
            const size_t words = static_cast<size_t>(width + 63) / 64;
            vector<uint64_t> reach(words, 0);
            for (auto a : items) {
                const uint64_t shift = static_cast<uint64_t>(std::abs(a));
                const size_t ws = shift / 64, bs = shift % 64;
                if (a > 0) {
                    for (size_t i = words; i-- > ws;) {
                        uint64_t v = reach[i - ws] << bs;
                        if (bs && i > ws)
                            v |= reach[i - ws - 1] >> (64 - bs);
                        reach[i] |= v;
                    }
                }
                else {
                    for (size_t i = 0; i + ws < words; ++i) {
                        uint64_t v = reach[i + ws] >> bs;
                        if (bs && i + ws + 1 < words)
                            v |= reach[i + ws + 1] << (64 - bs);
                        reach[i] |= v;
                    }
                }
                const auto bit = static_cast<uint64_t>(a + negative);
                reach[bit / 64] |= uint64_t{1} << (bit % 64);
                if (reach[negative / 64] >> (negative % 64) & 1)
                    return true;
            }
            return false;
        }

        if (items.size() > 44)
            throw Error(ErrorKind::ScaleExceeded, "subset-sum over " + std::to_string(items.size()) + " large coefficients");

        auto half_sums = [](span<const int64_t> part) {
            vector<int64_t> sums{0};
            for (auto a : part) {
                auto sz = sums.size();
                for (size_t i = 0; i < sz; ++i)
                    sums.push_back(sums[i] + a);
            }
            return sums;
        };
        auto left = half_sums(items.first(items.size() / 2));
        auto right = half_sums(items.subspan(items.size() / 2));
        // index 0 of each list is the empty subset
        for (size_t i = 1; i < left.size(); ++i)
            if (left[i] == 0)
                return true;
        for (size_t i = 1; i < right.size(); ++i)
            if (right[i] == 0)
                return true;
        std::sort(right.begin() + 1, right.end());
        for (size_t i = 1; i < left.size(); ++i)
            if (std::binary_search(right.begin() + 1, right.end(), -left[i]))
                return true;
        return false;
    }

    auto is_convex(const Equation & eq) -> bool
    {
        auto positive = std::count_if(eq.coefficients().begin(), eq.coefficients().end(), [](auto a) { return a > 0; });
        auto negative = static_cast<std::ptrdiff_t>(eq.size()) - positive;
        return std::min(positive, negative) == 1;
    }

    auto is_symmetric(const Equation & eq) -> bool
    {
        vector<int64_t> a(eq.coefficients().begin(), eq.coefficients().end());
        vector<int64_t> b;
        b.reserve(a.size());
        for (auto x : a)
            b.push_back(-x);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        return a == b;
    }

    auto to_string(SolutionClass c) -> std::string_view
    {
        switch (c) {
        case SolutionClass::NotASolution: return "NotASolution";
        case SolutionClass::Trivial: return "Trivial";
        case SolutionClass::NonTrivialWithRepeats: return "NonTrivialWithRepeats";
        case SolutionClass::AllDistinct: return "AllDistinct";
        }
        return "Unknown";
    }

    auto classify_solution(const Equation & eq, span<const int64_t> x) -> SolutionClass
    {
        if (x.size() != eq.size())
            throw Error(ErrorKind::LengthMismatch, "expected " + std::to_string(eq.size()) + " values, got " + std::to_string(x.size()));

        int64_t total = 0;
        for (size_t i = 0; i < x.size(); ++i)
            total = checked_add(total, checked_mul(eq[i], x[i]));
        if (total != 0)
            return SolutionClass::NotASolution;

        std::map<int64_t, int64_t> block_sums;
        for (size_t i = 0; i < x.size(); ++i)
            block_sums[x[i]] += eq[i];
        if (block_sums.size() == x.size())
            return SolutionClass::AllDistinct;
        for (auto & [value, s] : block_sums)
            if (s != 0)
                return SolutionClass::NonTrivialWithRepeats;
        return SolutionClass::Trivial;
    }

    auto to_string(AvoidanceMode m) -> std::string_view
    {
        return m == AvoidanceMode::DistinctFree ? "DistinctFree" : "NontrivialFree";
    }

    auto is_forbidden(AvoidanceMode m, SolutionClass c) -> bool
    {
        if (c == SolutionClass::AllDistinct)
            return true;
        return m == AvoidanceMode::NontrivialFree && c == SolutionClass::NonTrivialWithRepeats;
    }

    namespace
    {
        auto check_avoidance_scale(const Equation & eq, int64_t n) -> void
        {
            if (n < 1)
                throw Error(ErrorKind::InvalidInput, "N must be positive");
            if (n > max_avoidance_n || eq.size() > max_avoidance_variables)
                throw Error(ErrorKind::ScaleExceeded, "exhaustive avoidance search is limited to N <= " + std::to_string(max_avoidance_n) + " and k <= " + std::to_string(max_avoidance_variables));
        }

        class AvoidanceSearch
        {
        public:
            AvoidanceSearch(const Equation & eq, int64_t n, AvoidanceMode mode) :
                _eq(eq), _n(n), _mode(mode), _member(n + 1, 0), _tuple(eq.size())
            {
            }

            // Explores sets whose smallest element is `first`; returns the
            // first (in include-before-exclude order) set larger than floor.
            auto run(int64_t first, size_t floor) -> std::optional<vector<int64_t>>
            {
                _best_size = floor;
                _best.reset();
                _current.clear();
                if (static_cast<size_t>(_n - first + 1) <= _best_size)
                    return std::nullopt;
                if (! admits(first))
                    return std::nullopt;
                push(first);
                descend(first + 1);
                pop();
                return _best;
            }

        private:
            auto push(int64_t x) -> void
            {
                _current.push_back(x);
                _member[x] = 1;
            }

            auto pop() -> void
            {
                _member[_current.back()] = 0;
                _current.pop_back();
            }

            auto descend(int64_t next) -> void
            {
                if (_current.size() > _best_size) {
                    _best_size = _current.size();
                    _best = _current;
                }
                if (next > _n || _current.size() + static_cast<size_t>(_n - next + 1) <= _best_size)
                    return;
                if (admits(next)) {
                    push(next);
                    descend(next + 1);
                    pop();
                }
                descend(next + 1);
            }

            // Would adding x create a forbidden solution? Only tuples using x are new.
            auto admits(int64_t x) -> bool
            {
                _member[x] = 1;
                _candidate = x;
                _values = _current;
                _values.push_back(x);
                bool bad = assign(0, 0);
                _member[x] = 0;
                return ! bad;
            }

            auto assign(size_t i, int64_t partial) -> bool
            {
                const size_t k = _eq.size();
                if (i + 1 == k) {
                    const int64_t a = _eq[k - 1];
                    if (partial % a != 0)
                        return false;
                    const int64_t v = -partial / a;
                    if (v < 1 || v > _n || ! _member[v])
                        return false;
                    _tuple[k - 1] = v;
                    if (std::find(_tuple.begin(), _tuple.end(), _candidate) == _tuple.end())
                        return false;
                    return is_forbidden(_mode, classify_solution(_eq, _tuple));
                }
                for (auto v : _values) {
                    _tuple[i] = v;
                    if (assign(i + 1, partial + _eq[i] * v))
                        return true;
                }
                return false;
            }

            const Equation & _eq;
            int64_t _n;
            AvoidanceMode _mode;
            vector<char> _member;
            vector<int64_t> _tuple, _current, _values;
            int64_t _candidate = 0;
            size_t _best_size = 0;
            std::optional<vector<int64_t>> _best;
        };
    }

    auto brute_avoidance_branch(const Equation & eq, int64_t n, AvoidanceMode mode, int64_t first, size_t must_exceed)
        -> std::optional<AvoidanceResult>
    {
        check_avoidance_scale(eq, n);
        if (first < 1 || first > n)
            throw Error(ErrorKind::InvalidInput, "branch element outside [1, N]");
        AvoidanceSearch search{eq, n, mode};
        auto found = search.run(first, must_exceed);
        if (! found)
            return std::nullopt;
        return AvoidanceResult{found->size(), std::move(*found), mode};
    }

    auto brute_avoidance(const Equation & eq, int64_t n, AvoidanceMode mode, unsigned jobs) -> AvoidanceResult
    {
        check_avoidance_scale(eq, n);
        AvoidanceResult best{0, {}, mode};

        if (jobs <= 1) {
            for (int64_t first = 1; first <= n; ++first)
                if (auto r = brute_avoidance_branch(eq, n, mode, first, best.n_max))
                    best = std::move(*r);
            return best;
        }

        // Branch results are independent; merge keeps the smallest first
        // element among the maxima, which is what the sequential loop returns.
        vector<std::optional<AvoidanceResult>> results(n);
        for (int64_t start = 1; start <= n; start += jobs) {
            vector<std::future<std::optional<AvoidanceResult>>> batch;
            for (int64_t first = start; first < start + static_cast<int64_t>(jobs) && first <= n; ++first)
                batch.push_back(std::async(std::launch::async, [&eq, n, mode, first] {
                    return brute_avoidance_branch(eq, n, mode, first, 0);
                }));
            for (size_t i = 0; i < batch.size(); ++i)
                results[start - 1 + i] = batch[i].get();
        }
        for (auto & r : results)
            if (r && r->n_max > best.n_max)
                best = std::move(*r);
        return best;
    }

    auto count_distinct_solutions(const Equation & eq, span<const int64_t> set) -> uint64_t
    {
        vector<int64_t> values(set.begin(), set.end());
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());

        const size_t k = eq.size();
        double work = 1;
        for (size_t i = 0; i + 1 < k; ++i)
            work *= static_cast<double>(values.size());
        if (work > 1e9)
            throw Error(ErrorKind::ScaleExceeded, "enumeration of " + std::to_string(values.size()) + "^" + std::to_string(k - 1) + " tuples");

        std::unordered_set<int64_t> members(values.begin(), values.end());
        vector<int64_t> tuple(k);
        uint64_t count = 0;

        auto recurse = [&](auto & self, size_t i, int64_t partial) -> void {
            if (i + 1 == k) {
                const int64_t a = eq[k - 1];
                if (partial % a != 0)
                    return;
                const int64_t v = -partial / a;
                if (! members.contains(v))
                    return;
                for (size_t j = 0; j + 1 < k; ++j)
                    if (tuple[j] == v)
                        return;
                ++count;
                return;
            }
            for (auto v : values) {
                bool used = false;
                for (size_t j = 0; j < i; ++j)
                    if (tuple[j] == v) {
                        used = true;
                        break;
                    }
                if (used)
                    continue;
                tuple[i] = v;
                self(self, i + 1, checked_add(partial, checked_mul(eq[i], v)));
            }
        };
        recurse(recurse, 0, 0);
        return count;
    }
}
