#include <eqgraph/error.hpp>
#include <eqgraph/random.hpp>
#include <eqgraph/removal.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <numeric>

using std::size_t;
using std::uint64_t;
using std::vector;

namespace eqgraph
{
    using std::to_string;

    namespace
    {
        constexpr double slack = 1e-9;

        auto pattern_power(size_t k) -> double
        {
            return std::pow(static_cast<double>(k), static_cast<double>(k));
        }

        class Packer
        {
        public:
            Packer(const Graph & g, const Graph & f, const vector<Vertex> * parts) :
                _g(g), _f(f), _parts(parts), _used(g.edge_count(), 0), _phi(f.n()), _taken(g.n(), 0)
            {
                for (Vertex i = 0; i < f.n(); ++i) {
                    _earlier.emplace_back();
                    for (auto j : f.neighbours(i))
                        if (j < i)
                            _earlier.back().push_back(j);
                }
            }

            auto run() -> FCopyPacking
            {
                place(0);
                return std::move(_out);
            }

        private:
            auto edge_free(Vertex u, Vertex v) const -> bool
            {
                auto id = _g.edge_id(u, v);
                return id && ! _used[*id];
            }

            auto prefix_free(Vertex upto) const -> bool
            {
                for (Vertex i = 0; i < upto; ++i)
                    for (auto j : _earlier[i])
                        if (! edge_free(_phi[i], _phi[j]))
                            return false;
                return true;
            }

            auto place(Vertex i) -> void
            {
                if (i == _f.n()) {
                    for (auto [a, b] : _f.edges())
                        _used[*_g.edge_id(_phi[a], _phi[b])] = 1;
                    _out.push_back(_phi);
                    return;
                }
                auto consider = [&](Vertex w) -> bool {
                    if (_taken[w] || (_parts && (*_parts)[w] != i))
                        return true;
                    for (auto j : _earlier[i])
                        if (! edge_free(w, _phi[j]))
                            return true;
                    _phi[i] = w;
                    _taken[w] = 1;
                    place(i + 1);
                    _taken[w] = 0;
                    return prefix_free(i);
                };
                if (_earlier[i].empty()) {
                    for (Vertex w = 0; w < _g.n(); ++w)
                        if (! consider(w))
                            return;
                }
                else {
                    const auto anchor = _phi[_earlier[i].front()];
                    for (auto w : _g.neighbours(anchor))
                        if (! consider(w))
                            return;
                }
            }

            const Graph & _g;
            const Graph & _f;
            const vector<Vertex> * _parts;
            vector<char> _used;
            vector<Vertex> _phi;
            vector<char> _taken;
            vector<vector<Vertex>> _earlier;
            FCopyPacking _out;
        };
    }

    auto greedy_packing(const Graph & g, const Graph & f, const vector<Vertex> * parts) -> FCopyPacking
    {
        if (f.n() > max_packing_pattern)
            throw Error(ErrorKind::ScaleExceeded, "packing patterns are limited to " + to_string(max_packing_pattern) + " vertices");
        if (f.edge_count() == 0)
            throw Error(ErrorKind::InvalidInput, "pattern needs at least one edge");
        if (parts && parts->size() != g.n())
            throw Error(ErrorKind::InvalidInput, "partition size differs from the host");
        return Packer{g, f, parts}.run();
    }

    auto check_packing(const Graph & g, const Graph & f, const FCopyPacking & packing) -> std::optional<std::string>
    {
        vector<char> used(g.edge_count(), 0);
        for (size_t c = 0; c < packing.size(); ++c) {
            const auto & copy = packing[c];
            const std::string where = "copy " + to_string(c);
            if (copy.size() != f.n())
                return where + " has " + to_string(copy.size()) + " vertices";
            for (size_t i = 0; i < copy.size(); ++i) {
                if (copy[i] >= g.n())
                    return where + ": vertex out of range";
                for (size_t j = 0; j < i; ++j)
                    if (copy[i] == copy[j])
                        return where + ": vertex " + to_string(copy[i]) + " repeats";
            }
            for (auto [a, b] : f.edges()) {
                auto id = g.edge_id(copy[a], copy[b]);
                if (! id)
                    return where + ": (" + to_string(copy[a]) + "," + to_string(copy[b]) + ") is not an edge";
                if (used[*id])
                    return where + ": edge (" + to_string(copy[a]) + "," + to_string(copy[b]) + ") already used";
                used[*id] = 1;
            }
        }
        return std::nullopt;
    }

    auto verify_uniform_far(const Graph & g, const Graph & f, const UniformFarWitness & w) -> UniformFarCheck
    {
        auto fail = [](std::string condition, std::optional<size_t> vertex = {}, std::optional<size_t> copy = {}) {
            return UniformFarCheck{false, std::move(condition), vertex, copy};
        };
        const size_t n = g.n();
        const double need = w.eps * static_cast<double>(n) - slack;
        if (w.parts.size() != n)
            return fail("partition size " + to_string(w.parts.size()) + " differs from |G| = " + to_string(n));
        for (size_t v = 0; v < n; ++v)
            if (w.parts[v] >= f.n())
                return fail("part of vertex out of range", v);
        for (auto [u, v] : g.edges())
            if (! f.has_edge(w.parts[u], w.parts[v]))
                return fail("edge (" + to_string(u) + "," + to_string(v) + ") joins parts that are not adjacent in F", u);

        if (auto problem = check_packing(g, f, w.copies))
            return fail(*problem);
        vector<size_t> through(n, 0);
        for (size_t c = 0; c < w.copies.size(); ++c)
            for (Vertex i = 0; i < f.n(); ++i) {
                auto v = w.copies[c][i];
                if (w.parts[v] != i)
                    return fail("copy not aligned: pattern vertex " + to_string(i) + " sits in part " + to_string(w.parts[v]), v, c);
                ++through[v];
            }
        for (size_t v = 0; v < n; ++v)
            if (static_cast<double>(through[v]) < need)
                return fail("vertex in " + to_string(through[v]) + " copies, below eps |G|", v);

        vector<size_t> part_size(f.n(), 0);
        for (auto p : w.parts)
            ++part_size[p];
        for (Vertex i = 0; i < f.n(); ++i)
            if (f.degree(i) > 0 && static_cast<double>(part_size[i]) < need)
                return fail("part " + to_string(i) + " has " + to_string(part_size[i]) + " vertices, below eps |G|");
        vector<size_t> into(f.n());
        for (Vertex v = 0; v < n; ++v) {
            std::fill(into.begin(), into.end(), 0);
            for (auto u : g.neighbours(v))
                ++into[w.parts[u]];
            for (auto j : f.neighbours(w.parts[v]))
                if (static_cast<double>(into[j]) < need)
                    return fail("vertex has " + to_string(into[j]) + " neighbours in part " + to_string(j) + ", below eps |G|", v);
        }
        if (static_cast<double>(w.copies.size()) < w.eps * static_cast<double>(n) * static_cast<double>(n) / static_cast<double>(f.n()) - slack)
            return fail("fewer than eps |G|^2 / |F| copies");
        return UniformFarCheck{true, {}, {}, {}};
    }

    auto uniformize(const Graph & g, const Graph & f, const FCopyPacking & packing, double eps, uint64_t seed, size_t retry_cap) -> UniformizeResult
    {
        if (auto problem = check_packing(g, f, packing))
            throw Error(ErrorKind::InvalidInput, *problem);
        if (! (eps > 0 && eps <= 1))
            throw Error(ErrorKind::InvalidInput, "eps must lie in (0, 1]");
        const size_t n = g.n(), k = f.n();
        const double nn = static_cast<double>(n) * static_cast<double>(n);
        if (packing.empty() || static_cast<double>(packing.size()) < eps * nn - slack)
            throw Error(ErrorKind::PackingTooSmall, to_string(packing.size()) + " copies, fewer than eps n^2");

        UniformizeResult r;
        const double power = pattern_power(k);
        r.eps_prime = eps / (2 * power);

        Rng rng{seed};
        vector<Vertex> parts(n);
        vector<size_t> aligned;
        for (;;) {
            if (r.attempts == retry_cap)
                throw Error(ErrorKind::RetryCapExceeded, "no partition kept |C| / |F|^|F| copies in " + to_string(retry_cap) + " attempts");
            ++r.attempts;
            for (auto & p : parts)
                p = static_cast<Vertex>(uniform_below(rng, k));
            aligned.clear();
            for (size_t c = 0; c < packing.size(); ++c) {
                bool ok = true;
                for (Vertex i = 0; i < k && ok; ++i)
                    ok = parts[packing[c][i]] == i;
                if (ok)
                    aligned.push_back(c);
            }
            if (static_cast<double>(aligned.size()) * power >= static_cast<double>(packing.size()))
                break;
        }
        r.aligned = aligned.size();

        const double threshold = r.eps_prime * static_cast<double>(n);
        vector<size_t> count(n, 0);
        vector<vector<size_t>> through(n);
        for (size_t idx = 0; idx < aligned.size(); ++idx)
            for (auto v : packing[aligned[idx]]) {
                ++count[v];
                through[v].push_back(idx);
            }
        auto low = [&](Vertex v) { return count[v] > 0 && static_cast<double>(count[v]) < threshold - slack; };
        vector<char> alive(aligned.size(), 1);
        std::deque<Vertex> queue;
        for (Vertex v = 0; v < n; ++v)
            if (low(v))
                queue.push_back(v);
        while (! queue.empty()) {
            auto v = queue.front();
            queue.pop_front();
            if (! low(v))
                continue;
            for (auto idx : through[v]) {
                if (! alive[idx])
                    continue;
                alive[idx] = 0;
                for (auto u : packing[aligned[idx]])
                    if (--count[u], low(u))
                        queue.push_back(u);
            }
        }

        vector<Vertex> index(n, ~Vertex{0});
        for (Vertex v = 0; v < n; ++v)
            if (count[v] > 0) {
                index[v] = static_cast<Vertex>(r.original.size());
                r.original.push_back(v);
            }
        vector<Edge> edges;
        for (size_t idx = 0; idx < aligned.size(); ++idx) {
            if (! alive[idx])
                continue;
            const auto & copy = packing[aligned[idx]];
            vector<Vertex> relabelled;
            for (auto v : copy)
                relabelled.push_back(index[v]);
            for (auto [a, b] : f.edges())
                edges.push_back(make_edge(relabelled[a], relabelled[b]));
            r.witness.copies.push_back(std::move(relabelled));
        }
        r.kept = r.witness.copies.size();
        r.subgraph = Graph{r.original.size(), std::move(edges)};
        for (auto v : r.original)
            r.witness.parts.push_back(parts[v]);
        r.witness.eps = r.eps_prime;
        return r;
    }

    namespace
    {
        auto common_count(std::span<const Vertex> x, std::span<const Vertex> y, std::span<const Vertex> parts, Vertex part) -> uint64_t
        {
            uint64_t c = 0;
            size_t i = 0, j = 0;
            while (i < x.size() && j < y.size()) {
                if (x[i] < y[j])
                    ++i;
                else if (y[j] < x[i])
                    ++j;
                else {
                    c += parts[x[i]] == part;
                    ++i;
                    ++j;
                }
            }
            return c;
        }
    }

    auto count_p4_aligned(const Graph & g, std::span<const Vertex> parts) -> BigCount
    {
        if (parts.size() != g.n())
            throw Error(ErrorKind::InvalidInput, "partition size differs from the host");
        vector<uint64_t> into_a(g.n(), 0);
        for (Vertex v = 0; v < g.n(); ++v)
            for (auto u : g.neighbours(v))
                into_a[v] += parts[u] == 0;
        WideCounter pairs, repeats;
        for (auto [u, v] : g.edges()) {
            Vertex b = u, c = v;
            if (parts[b] == 2 && parts[c] == 1)
                std::swap(b, c);
            if (parts[b] != 1 || parts[c] != 2)
                continue;
            // x1 ranges over N(b) in A, x4 over N(c) in A, minus x1 == x4
            pairs.add_product(into_a[b], into_a[c]);
            repeats.add(common_count(g.neighbours(b), g.neighbours(c), parts, 0));
        }
        return pairs.value() - repeats.value();
    }

    auto count_c5(const Graph & g) -> BigCount
    {
        const size_t n = g.n();
        if (n > max_c5_vertices)
            throw Error(ErrorKind::ScaleExceeded, "exact C5 counting is limited to " + to_string(max_c5_vertices) + " vertices");
        // tr(A^5) = 10 c5 + 5 sum_i (A^3)_ii (d_i - 1): the other closed 5-walks
        // go round a triangle with one step out and back
        vector<vector<uint64_t>> a2(n, vector<uint64_t>(n, 0)), a3(n, vector<uint64_t>(n, 0));
        for (Vertex i = 0; i < n; ++i)
            for (auto k : g.neighbours(i))
                for (auto j : g.neighbours(k))
                    ++a2[i][j];
        for (Vertex i = 0; i < n; ++i)
            for (Vertex k = 0; k < n; ++k)
                if (a2[i][k] != 0)
                    for (auto j : g.neighbours(k))
                        a3[i][j] += a2[i][k];
        WideCounter closed, spikes;
        for (Vertex i = 0; i < n; ++i) {
            for (Vertex j = 0; j < n; ++j)
                closed.add_product(a2[i][j], a3[j][i]);
            if (g.degree(i) > 0)
                spikes.add_product(a3[i][i], g.degree(i) - 1);
        }
        return (closed.value() - 5 * spikes.value()) / 10;
    }

    auto dense_core_c5(const Graph & g, double delta, uint64_t seed, size_t retry_cap) -> DenseCoreReport
    {
        if (! (delta > 0 && delta < 1))
            throw Error(ErrorKind::InvalidInput, "delta must lie in (0, 1)");
        const size_t n = g.n();
        DenseCoreReport r;
        r.n = n;
        r.delta = delta;
        const auto k3 = Graph::complete(3);
        auto packing = greedy_packing(g, k3);
        if (packing.empty())
            throw Error(ErrorKind::NoTriangles, "graph has no triangle");
        r.packing = packing.size();
        r.p = static_cast<double>(packing.size()) / (static_cast<double>(n) * static_cast<double>(n));
        r.round_bound = std::log(static_cast<double>(n)) / std::log(1 / delta);

        // triangles as (a, b, c) by part
        Rng rng{seed};
        vector<Vertex> order(n);
        vector<std::array<Vertex, 3>> tri;
        for (;;) {
            if (r.attempts == retry_cap)
                throw Error(ErrorKind::RetryCapExceeded, "no tripartition aligned more than 1/5 of the packing in " + to_string(retry_cap) + " attempts");
            ++r.attempts;
            std::iota(order.begin(), order.end(), 0);
            shuffle(std::span<Vertex>{order}, rng);
            r.parts.assign(n, 0);
            for (size_t i = 0; i < n; ++i)
                r.parts[order[i]] = static_cast<Vertex>(i % 3);
            tri.clear();
            for (auto & t : packing) {
                std::array<Vertex, 3> by_part{};
                unsigned seen = 0;
                for (auto v : t) {
                    by_part[r.parts[v]] = v;
                    seen |= 1u << r.parts[v];
                }
                if (seen == 7)
                    tri.push_back(by_part);
            }
            if (5 * tri.size() > packing.size())
                break;
        }
        r.aligned = tri.size();

        auto refine = [&](unsigned side, const vector<char> & admitted, vector<CoreIteration> & steps, size_t & rounds) -> vector<Vertex> {
            vector<size_t> count(n, 0);
            for (auto & t : tri)
                if (admitted[t[0]])
                    ++count[t[side]];
            vector<Vertex> current;
            for (Vertex v = 0; v < n; ++v)
                if (r.parts[v] == side)
                    current.push_back(v);
            auto mass_of = [&](const vector<Vertex> & s) {
                size_t m = 0;
                for (auto v : s)
                    m += count[v];
                return m;
            };
            auto record = [&](const vector<Vertex> & s) {
                const size_t m = mass_of(s);
                steps.push_back({s.size(), m, s.empty() ? 0.0 : static_cast<double>(m) / (static_cast<double>(n) * static_cast<double>(s.size()))});
            };
            record(current);
            for (rounds = 0;; ++rounds) {
                const double cut = delta * steps.back().p * static_cast<double>(n);
                vector<Vertex> next;
                for (auto v : current)
                    if (static_cast<double>(count[v]) >= cut - slack)
                        next.push_back(v);
                record(next);
                if (static_cast<double>(next.size()) >= delta * static_cast<double>(current.size()) - slack || next.empty())
                    return next;
                current = std::move(next);
            }
        };

        vector<char> everything(n, 1);
        r.core_a = refine(0, everything, r.a_steps, r.a_rounds);
        vector<char> in_core_a(n, 0);
        for (auto v : r.core_a)
            in_core_a[v] = 1;
        r.core_b = refine(1, in_core_a, r.b_steps, r.b_rounds);
        vector<char> in_core_b(n, 0);
        for (auto v : r.core_b)
            in_core_b[v] = 1;
        for (auto & t : tri)
            r.core_mass += in_core_a[t[0]] && in_core_b[t[1]];

        vector<Edge> kept;
        for (auto & t : tri)
            for (auto [i, j] : {std::pair{0, 1}, std::pair{1, 2}, std::pair{0, 2}})
                kept.push_back(make_edge(t[i], t[j]));
        const Graph aligned_graph{n, std::move(kept)};
        vector<Vertex> p4_parts(n);
        for (auto x : r.core_b) {
            for (Vertex v = 0; v < n; ++v)
                p4_parts[v] = r.parts[v] == 0 ? 3 : r.parts[v];
            p4_parts[x] = 3;
            for (auto u : aligned_graph.neighbours(x))
                if (in_core_a[u])
                    p4_parts[u] = 0;
            r.yields.push_back(count_p4_aligned(aligned_graph, p4_parts));
            r.total_yield += r.yields.back();
        }
        if (n <= max_c5_vertices)
            r.c5 = count_c5(g);
        return r;
    }
}
