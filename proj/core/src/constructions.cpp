#include <eqgraph/constructions.hpp>
#include <eqgraph/error.hpp>

#include <algorithm>
#include <map>
#include <stdexcept>

using std::int64_t;
using std::size_t;
using std::vector;

namespace eqgraph
{
    using std::to_string;

    auto ternary_baseline(int64_t n) -> vector<int64_t>
    {
        vector<int64_t> out;
        // m runs over {0,1}-digit numbers in increasing order: binary counting read in base 3
        for (uint64_t bits = 0;; ++bits) {
            int64_t m = 0, place = 1;
            for (auto b = bits; b != 0; b >>= 1, place *= 3)
                if (b & 1)
                    m += place;
            if (m >= n)
                break;
            out.push_back(m + 1);
        }
        return out;
    }

    auto is_progression_free(std::span<const int64_t> a) -> bool
    {
        if (a.empty())
            return true;
        const int64_t lo = a.front(), hi = a.back();
        vector<char> member(static_cast<size_t>(hi - lo + 1), 0);
        for (auto x : a)
            member[x - lo] = 1;
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = i + 1; j < a.size(); ++j)
                if ((a[i] + a[j]) % 2 == 0 && member[(a[i] + a[j]) / 2 - lo])
                    return false;
        return true;
    }

    namespace
    {
        // Visit every k-digit vector with digits below `half` whose base-d value
        // is below n, calling f(value, squared norm).
        template <typename F_>
        auto for_each_point(int64_t d, int64_t k, int64_t half, int64_t n, F_ && f) -> void
        {
            vector<int64_t> powers(k + 1, 1);
            for (int64_t i = 1; i <= k; ++i)
                powers[i] = powers[i - 1] > n ? powers[i - 1] : powers[i - 1] * d;
            auto rec = [&](auto & self, int64_t pos, int64_t value, int64_t norm) -> void {
                if (pos < 0) {
                    f(value, norm);
                    return;
                }
                for (int64_t digit = 0; digit < half; ++digit) {
                    const int64_t v = value + digit * powers[pos];
                    if (v >= n)
                        break;
                    self(self, pos - 1, v, norm + digit * digit);
                }
            };
            rec(rec, k - 1, 0, 0);
        }
    }

    auto behrend_set(int64_t n) -> BehrendSet
    {
        if (n < 1 || n > max_behrend_n)
            throw Error(ErrorKind::ScaleExceeded, "behrend_set needs 1 <= N <= " + to_string(max_behrend_n));

        BehrendSet best;
        best.n = n;
        size_t best_size = 0;
        for (int64_t d = 2; d <= 20; ++d) {
            const int64_t half = (d + 1) / 2;
            int64_t reach = d; // d^(k-1) for the k under consideration
            for (int64_t k = 2; k <= 12; ++k, reach = reach > n ? reach : reach * d) {
                if (k > 2 && reach >= n)
                    break; // every value below n already fits in k - 1 digits
                std::map<int64_t, size_t> shells;
                for_each_point(d, k, half, n, [&](int64_t, int64_t norm) { ++shells[norm]; });
                for (auto [r, count] : shells)
                    if (count > best_size) {
                        best_size = count;
                        best.d = d;
                        best.k = k;
                        best.r = r;
                    }
            }
        }
        for_each_point(best.d, best.k, (best.d + 1) / 2, n, [&](int64_t value, int64_t norm) {
            if (norm == best.r)
                best.members.push_back(value + 1);
        });

        auto baseline = ternary_baseline(n);
        if (baseline.size() > best.members.size()) {
            best.members = std::move(baseline);
            best.from_baseline = true;
        }
        std::sort(best.members.begin(), best.members.end());
        if (! is_progression_free(best.members))
            throw std::logic_error("behrend_set produced a 3-AP");
        return best;
    }

    auto rs_graph(const Graph & pattern, const ColourOrdering & c, int64_t n, std::span<const int64_t> set) -> RSGraph
    {
        const size_t k = pattern.n();
        if (k == 0 || k > max_rs_pattern)
            throw Error(ErrorKind::ScaleExceeded, "rs_graph supports patterns with 1.." + to_string(max_rs_pattern) + " vertices");
        if (c.size() != k)
            throw Error(ErrorKind::InvalidInput, "ordering size differs from the pattern");
        if (n < 1 || static_cast<int64_t>(k) * n > max_rs_part)
            throw Error(ErrorKind::ScaleExceeded, "parts of size |F| N are limited to " + to_string(max_rs_part));
        vector<int64_t> a(set.begin(), set.end());
        std::sort(a.begin(), a.end());
        if (std::adjacent_find(a.begin(), a.end()) != a.end())
            throw Error(ErrorKind::InvalidInput, "set has repeated members");
        if (! a.empty() && (a.front() < 1 || a.back() > n))
            throw Error(ErrorKind::InvalidInput, "set must lie in [1, N]");

        const int64_t part = static_cast<int64_t>(k) * n;
        if (static_cast<double>(pattern.edge_count()) * static_cast<double>(part) * static_cast<double>(a.size()) > 2e7)
            throw Error(ErrorKind::ScaleExceeded, "more than 2e7 edges");
        auto id = [&](Vertex v, int64_t y) { return static_cast<Vertex>(v * part + y - 1); };

        vector<Edge> edges;
        for (auto [u, v] : pattern.edges()) {
            const int64_t delta = c(v) - c(u);
            for (int64_t x = 1; x <= part; ++x)
                for (auto m : a) {
                    const int64_t y = x + delta * m;
                    if (y >= 1 && y <= part)
                        edges.push_back(make_edge(id(u, x), id(v, y)));
                }
        }

        vector<RSCopy> packing;
        size_t dropped = 0;
        for (int64_t x = 1; x <= n; ++x)
            for (auto m : a) {
                RSCopy copy{x, m, {}};
                bool inside = true;
                for (Vertex v = 0; v < k && inside; ++v) {
                    const int64_t y = x + (c(v) - 1) * m;
                    inside = y >= 1 && y <= part;
                    copy.vertices.push_back(inside ? id(v, y) : 0);
                }
                if (inside)
                    packing.push_back(std::move(copy));
                else
                    ++dropped;
            }

        vector<Vertex> parts(k * static_cast<size_t>(part));
        for (size_t v = 0; v < parts.size(); ++v)
            parts[v] = static_cast<Vertex>(v / static_cast<size_t>(part));

        return RSGraph{pattern, c, n, std::move(a), part, Graph{parts.size(), std::move(edges)}, std::move(parts), std::move(packing), dropped};
    }

    auto rs_value(const RSGraph & rs, Vertex v) -> std::pair<Vertex, int64_t>
    {
        if (v >= rs.graph.n())
            throw Error(ErrorKind::InvalidInput, "vertex out of range");
        return {static_cast<Vertex>(v / rs.part_size), static_cast<int64_t>(v % rs.part_size) + 1};
    }

    auto g_n(unsigned n) -> Graph
    {
        if (n < 1 || n > max_g_n)
            throw Error(ErrorKind::ScaleExceeded, "g_n is built for 1 <= n <= " + to_string(max_g_n));
        const Vertex subsets = 1u << n;
        auto b = [&](Vertex mask) { return n + mask; };
        auto c = [&](Vertex mask) { return n + subsets + mask; };
        vector<Edge> edges;
        for (Vertex x = 0; x < subsets; ++x) {
            for (Vertex a = 0; a < n; ++a)
                if (x & (1u << a)) {
                    edges.emplace_back(a, b(x));
                    edges.emplace_back(a, c(x));
                }
            for (Vertex y = 0; y < subsets; ++y)
                if ((x & y) == 0)
                    edges.emplace_back(b(x), c(y));
        }
        return Graph{n + 2 * subsets, std::move(edges)};
    }

    auto g_n_parts(unsigned n, bool proper_subsets_only) -> vector<Vertex>
    {
        if (n < 1 || n > max_g_n)
            throw Error(ErrorKind::ScaleExceeded, "g_n is built for 1 <= n <= " + to_string(max_g_n));
        const size_t side = proper_subsets_only ? (1u << n) - 2 : 1u << n;
        vector<Vertex> parts(n, 0);
        parts.insert(parts.end(), side, 1);
        parts.insert(parts.end(), side, 2);
        return parts;
    }

    auto fig5_graph() -> Graph
    {
        const unsigned n = 3;
        const Vertex subsets = 1u << n;
        vector<Vertex> keep{0, 1, 2};
        for (Vertex side = 0; side < 2; ++side)
            for (Vertex mask = 1; mask + 1 < subsets; ++mask)
                keep.push_back(n + side * subsets + mask);
        return g_n(n).induced(keep);
    }
}
