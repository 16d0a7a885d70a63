#include <eqgraph/error.hpp>
#include <eqgraph/graph.hpp>

#include <algorithm>
#include <bit>
#include <numeric>
#include <queue>
#include <string>

using std::size_t;
using std::uint64_t;
using std::vector;

namespace eqgraph
{
    using std::to_string;

    Graph::Graph(size_t n, vector<Edge> edges) :
        _edges(std::move(edges)),
        _adj(n)
    {
        for (auto & [u, v] : _edges) {
            if (u >= n || v >= n)
                throw Error(ErrorKind::InvalidInput, "edge (" + to_string(u) + "," + to_string(v) + ") outside " + to_string(n) + " vertices");
            if (u == v)
                throw Error(ErrorKind::InvalidInput, "loop at vertex " + to_string(u));
            if (u > v)
                std::swap(u, v);
        }
        std::sort(_edges.begin(), _edges.end());
        if (auto dup = std::adjacent_find(_edges.begin(), _edges.end()); dup != _edges.end())
            throw Error(ErrorKind::InvalidInput, "repeated edge (" + to_string(dup->first) + "," + to_string(dup->second) + ")");
        for (auto [u, v] : _edges) {
            _adj[u].push_back(v);
            _adj[v].push_back(u);
        }
        for (auto & a : _adj)
            std::sort(a.begin(), a.end());
    }

    auto Graph::complete(size_t n) -> Graph
    {
        vector<Edge> e;
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v)
                e.emplace_back(u, v);
        return Graph{n, std::move(e)};
    }

    auto Graph::cycle(size_t n) -> Graph
    {
        vector<Edge> e;
        for (Vertex u = 0; u < n; ++u)
            e.push_back(make_edge(u, static_cast<Vertex>((u + 1) % n)));
        return Graph{n, std::move(e)};
    }

    auto Graph::path(size_t n) -> Graph
    {
        vector<Edge> e;
        for (Vertex u = 0; u + 1 < n; ++u)
            e.emplace_back(u, u + 1);
        return Graph{n, std::move(e)};
    }

    auto Graph::petersen() -> Graph
    {
        // outer 0..4 as a 5-cycle, inner 5..9 as a pentagram, spokes i -- i+5
        vector<Edge> e;
        for (Vertex i = 0; i < 5; ++i) {
            e.push_back(make_edge(i, (i + 1) % 5));
            e.push_back(make_edge(i, i + 5));
            e.push_back(make_edge(i + 5, (i + 2) % 5 + 5));
        }
        return Graph{10, std::move(e)};
    }

    auto Graph::has_edge(Vertex u, Vertex v) const -> bool
    {
        if (u >= n() || v >= n())
            return false;
        return std::binary_search(_adj[u].begin(), _adj[u].end(), v);
    }

    auto Graph::edge_id(Vertex u, Vertex v) const -> std::optional<size_t>
    {
        auto e = make_edge(u, v);
        auto it = std::lower_bound(_edges.begin(), _edges.end(), e);
        if (it == _edges.end() || *it != e)
            return std::nullopt;
        return static_cast<size_t>(it - _edges.begin());
    }

    auto Graph::components() const -> vector<size_t>
    {
        const size_t none = ~size_t{0};
        vector<size_t> comp(n(), none);
        size_t next = 0;
        vector<Vertex> stack;
        for (Vertex s = 0; s < n(); ++s) {
            if (comp[s] != none)
                continue;
            comp[s] = next;
            stack.push_back(s);
            while (! stack.empty()) {
                auto v = stack.back();
                stack.pop_back();
                for (auto w : _adj[v])
                    if (comp[w] == none) {
                        comp[w] = next;
                        stack.push_back(w);
                    }
            }
            ++next;
        }
        return comp;
    }

    auto Graph::component_count() const -> size_t
    {
        auto comp = components();
        return comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    }

    auto Graph::induced(std::span<const Vertex> keep) const -> Graph
    {
        vector<Vertex> index(n(), ~Vertex{0});
        for (size_t i = 0; i < keep.size(); ++i)
            index[keep[i]] = static_cast<Vertex>(i);
        vector<Edge> e;
        for (auto [u, v] : _edges)
            if (index[u] != ~Vertex{0} && index[v] != ~Vertex{0})
                e.push_back(make_edge(index[u], index[v]));
        return Graph{keep.size(), std::move(e)};
    }

    auto validate_coloured(Graph host, Graph pattern, vector<Vertex> sigma) -> ColouredGraph
    {
        if (sigma.size() != host.n())
            throw Error(ErrorKind::InvalidInput, "colouring has " + to_string(sigma.size()) + " entries for " + to_string(host.n()) + " vertices");
        for (size_t v = 0; v < sigma.size(); ++v)
            if (sigma[v] >= pattern.n())
                throw Error(ErrorKind::InvalidInput, "vertex " + to_string(v) + " has colour " + to_string(sigma[v]) + " outside the pattern");
        for (auto [u, v] : host.edges())
            if (! pattern.has_edge(sigma[u], sigma[v]))
                throw Error(ErrorKind::NotAHomomorphism, "edge (" + to_string(u) + "," + to_string(v) + ") has colours " + to_string(sigma[u]) + "," + to_string(sigma[v]));
        return ColouredGraph{std::move(host), std::move(pattern), std::move(sigma)};
    }

    auto ColourOrdering::validate(vector<std::int64_t> values) -> ColourOrdering
    {
        auto sorted = values;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw Error(ErrorKind::InvalidInput, "colour ordering is not injective");
        for (auto v : values)
            if (v < 1 || v > max_value)
                throw Error(ErrorKind::InvalidInput, "colour ordering value " + to_string(v) + " outside [1, 10^6]");
        return ColourOrdering{std::move(values)};
    }

    auto ColourOrdering::identity(size_t pattern_size) -> ColourOrdering
    {
        vector<std::int64_t> v(pattern_size);
        std::iota(v.begin(), v.end(), 1);
        return ColourOrdering{std::move(v)};
    }

    auto ColourOrdering::all_permutations(size_t pattern_size) -> vector<ColourOrdering>
    {
        vector<std::int64_t> v(pattern_size);
        std::iota(v.begin(), v.end(), 1);
        vector<ColourOrdering> result;
        do
            result.push_back(ColourOrdering{v});
        while (std::next_permutation(v.begin(), v.end()));
        return result;
    }

    auto is_homomorphism(const Graph & g, const Graph & t, std::span<const Vertex> mapping) -> bool
    {
        if (mapping.size() != g.n())
            return false;
        for (auto m : mapping)
            if (m >= t.n())
                return false;
        for (auto [u, v] : g.edges())
            if (! t.has_edge(mapping[u], mapping[v]))
                return false;
        return true;
    }

    namespace
    {
        class HomSearch
        {
        public:
            HomSearch(const Graph & g, const Graph & t, uint64_t budget) :
                _g(g), _t(t), _budget(budget), _assigned(g.n(), ~Vertex{0}), _domain(g.n())
            {
                for (Vertex x = 0; x < t.n(); ++x) {
                    uint64_t mask = 0;
                    for (auto y : t.neighbours(x))
                        mask |= uint64_t{1} << y;
                    _target_adj.push_back(mask);
                }
                const uint64_t all = t.n() == 64 ? ~uint64_t{0} : (uint64_t{1} << t.n()) - 1;
                std::fill(_domain.begin(), _domain.end(), all);
            }

            auto run() -> HomResult
            {
                HomResult result;
                auto comp = _g.components();
                size_t count = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
                for (size_t c = 0; c < count; ++c) {
                    _order.clear();
                    build_order(comp, c);
                    auto r = search(0);
                    result.nodes = _nodes;
                    if (r != HomOutcome::Found) {
                        result.outcome = r;
                        return result;
                    }
                }
                result.outcome = HomOutcome::Found;
                result.mapping = _assigned;
                return result;
            }

        private:
            // Max-degree start, then repeatedly the vertex with most ordered
            // neighbours (ties: degree, then index).
            auto build_order(const vector<size_t> & comp, size_t c) -> void
            {
                vector<Vertex> members;
                for (Vertex v = 0; v < _g.n(); ++v)
                    if (comp[v] == c)
                        members.push_back(v);
                vector<size_t> placed_neighbours(_g.n(), 0);
                vector<char> placed(_g.n(), 0);
                for (size_t step = 0; step < members.size(); ++step) {
                    Vertex best = ~Vertex{0};
                    for (auto v : members) {
                        if (placed[v])
                            continue;
                        if (best == ~Vertex{0} || placed_neighbours[v] > placed_neighbours[best] ||
                            (placed_neighbours[v] == placed_neighbours[best] && _g.degree(v) > _g.degree(best)))
                            best = v;
                    }
                    placed[best] = 1;
                    _order.push_back(best);
                    for (auto w : _g.neighbours(best))
                        ++placed_neighbours[w];
                }
            }

            auto search(size_t depth) -> HomOutcome
            {
                if (depth == _order.size())
                    return HomOutcome::Found;
                const Vertex v = _order[depth];
                uint64_t dom = _domain[v];
                while (dom) {
                    const Vertex x = std::countr_zero(dom);
                    dom &= dom - 1;
                    if (++_nodes > _budget)
                        return HomOutcome::BudgetExhausted;

                    _assigned[v] = x;
                    const size_t mark = _trail.size();
                    bool wiped = false;
                    for (auto w : _g.neighbours(v)) {
                        if (_assigned[w] != ~Vertex{0})
                            continue;
                        auto narrowed = _domain[w] & _target_adj[x];
                        if (narrowed != _domain[w]) {
                            _trail.emplace_back(w, _domain[w]);
                            _domain[w] = narrowed;
                        }
                        if (! narrowed) {
                            wiped = true;
                            break;
                        }
                    }
                    if (! wiped) {
                        auto r = search(depth + 1);
                        if (r != HomOutcome::NotFound)
                            return r;
                    }
                    while (_trail.size() > mark) {
                        _domain[_trail.back().first] = _trail.back().second;
                        _trail.pop_back();
                    }
                    _assigned[v] = ~Vertex{0};
                }
                return HomOutcome::NotFound;
            }

            const Graph & _g;
            const Graph & _t;
            uint64_t _budget;
            uint64_t _nodes = 0;
            vector<Vertex> _assigned;
            vector<uint64_t> _domain;
            vector<uint64_t> _target_adj;
            vector<Vertex> _order;
            vector<std::pair<Vertex, uint64_t>> _trail;
        };
    }

    auto hom_exists(const Graph & g, const Graph & t, uint64_t budget) -> HomResult
    {
        if (t.n() > 64)
            throw Error(ErrorKind::ScaleExceeded, "target graphs are limited to 64 vertices");
        if (g.n() == 0)
            return HomResult{HomOutcome::Found, {}, 0};
        if (t.n() == 0)
            return HomResult{HomOutcome::NotFound, {}, 0};
        return HomSearch{g, t, budget}.run();
    }

    auto blow_up(const ColouredGraph & g, std::span<const size_t> sizes) -> ColouredGraph
    {
        const size_t n = g.host.n();
        if (sizes.size() != n)
            throw Error(ErrorKind::InvalidInput, "blow-up needs one size per vertex");
        vector<size_t> offset(n + 1, 0);
        for (size_t v = 0; v < n; ++v) {
            if (sizes[v] == 0)
                throw Error(ErrorKind::ZeroSize, "vertex " + to_string(v) + " has blow-up size 0");
            offset[v + 1] = offset[v] + sizes[v];
        }
        vector<Vertex> sigma(offset[n]);
        for (size_t v = 0; v < n; ++v)
            std::fill(sigma.begin() + offset[v], sigma.begin() + offset[v + 1], g.sigma[v]);
        vector<Edge> edges;
        for (auto [u, v] : g.host.edges())
            for (size_t i = offset[u]; i < offset[u + 1]; ++i)
                for (size_t j = offset[v]; j < offset[v + 1]; ++j)
                    edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
        return ColouredGraph{Graph{offset[n], std::move(edges)}, g.pattern, std::move(sigma)};
    }
}
