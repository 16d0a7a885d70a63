#include <eqgraph/error.hpp>
#include <eqgraph/graph.hpp>

#include <algorithm>
#include <queue>
#include <string>

using std::int64_t;
using std::size_t;
using std::vector;

namespace eqgraph
{
    using std::to_string;

    auto canonical_cycle(vector<Vertex> cycle) -> vector<Vertex>
    {
        if (cycle.size() < 3)
            return cycle;
        auto smallest = std::min_element(cycle.begin(), cycle.end());
        std::rotate(cycle.begin(), smallest, cycle.end());
        if (cycle[1] > cycle.back())
            std::reverse(cycle.begin() + 1, cycle.end());
        return cycle;
    }

    namespace
    {
        class CycleWalker
        {
        public:
            CycleWalker(const Graph & g, Vertex s, size_t max_count, size_t max_len, CycleList & out) :
                _g(g), _s(s), _max_count(max_count), _max_len(max_len), _out(out), _on_path(g.n(), 0)
            {
            }

            auto run() -> void
            {
                _path.push_back(_s);
                _on_path[_s] = 1;
                extend();
            }

        private:
            auto extend() -> bool
            {
                const Vertex v = _path.back();
                for (auto w : _g.neighbours(v)) {
                    if (w == _s) {
                        if (_path.size() >= 3 && _path[1] < _path.back()) {
                            if (_out.cycles.size() >= _max_count) {
                                _out.truncated_by_count = true;
                                return false;
                            }
                            _out.cycles.push_back(_path);
                        }
                        continue;
                    }
                    if (w < _s || _on_path[w])
                        continue;
                    if (_path.size() >= _max_len) {
                        if (! _out.truncated_by_length && closes_later(w))
                            _out.truncated_by_length = true;
                        continue;
                    }
                    _path.push_back(w);
                    _on_path[w] = 1;
                    bool more = extend();
                    _on_path[w] = 0;
                    _path.pop_back();
                    if (! more)
                        return false;
                }
                return true;
            }

            // Can a path from w avoiding the current path come back to s?
            auto closes_later(Vertex w) -> bool
            {
                vector<char> seen(_g.n(), 0);
                vector<Vertex> stack{w};
                seen[w] = 1;
                while (! stack.empty()) {
                    auto x = stack.back();
                    stack.pop_back();
                    for (auto y : _g.neighbours(x)) {
                        if (y == _s)
                            return true;
                        if (y < _s || _on_path[y] || seen[y])
                            continue;
                        seen[y] = 1;
                        stack.push_back(y);
                    }
                }
                return false;
            }

            const Graph & _g;
            Vertex _s;
            size_t _max_count, _max_len;
            CycleList & _out;
            vector<char> _on_path;
            vector<Vertex> _path;
        };
    }

    auto enumerate_cycles_from(const Graph & g, Vertex s, size_t max_count, size_t max_len) -> CycleList
    {
        CycleList result;
        if (s >= g.n())
            throw Error(ErrorKind::InvalidInput, "start vertex out of range");
        CycleWalker{g, s, max_count, max_len, result}.run();
        return result;
    }

    auto enumerate_cycles(const Graph & g, size_t max_count, size_t max_len) -> CycleList
    {
        CycleList result;
        for (Vertex s = 0; s < g.n(); ++s) {
            auto chunk = enumerate_cycles_from(g, s, max_count - result.cycles.size(), max_len);
            for (auto & c : chunk.cycles)
                result.cycles.push_back(std::move(c));
            result.truncated_by_length = result.truncated_by_length || chunk.truncated_by_length;
            if (chunk.truncated_by_count) {
                result.truncated_by_count = true;
                break;
            }
        }
        return result;
    }

    namespace
    {
        struct Forest
        {
            vector<Vertex> parent;
            vector<size_t> depth;
        };

        auto bfs_forest(const Graph & g) -> Forest
        {
            const Vertex none = ~Vertex{0};
            Forest f{vector<Vertex>(g.n(), none), vector<size_t>(g.n(), 0)};
            vector<char> seen(g.n(), 0);
            for (Vertex root = 0; root < g.n(); ++root) {
                if (seen[root])
                    continue;
                seen[root] = 1;
                std::queue<Vertex> q;
                q.push(root);
                while (! q.empty()) {
                    auto v = q.front();
                    q.pop();
                    for (auto w : g.neighbours(v))
                        if (! seen[w]) {
                            seen[w] = 1;
                            f.parent[w] = v;
                            f.depth[w] = f.depth[v] + 1;
                            q.push(w);
                        }
                }
            }
            return f;
        }

        // u ... lca ... v along tree paths, as a vertex sequence
        auto tree_cycle(const vector<Vertex> & parent, const vector<size_t> & depth, Vertex u, Vertex v) -> vector<Vertex>
        {
            vector<Vertex> up, down;
            while (depth[u] > depth[v]) {
                up.push_back(u);
                u = parent[u];
            }
            while (depth[v] > depth[u]) {
                down.push_back(v);
                v = parent[v];
            }
            while (u != v) {
                up.push_back(u);
                down.push_back(v);
                u = parent[u];
                v = parent[v];
            }
            up.push_back(u);
            up.insert(up.end(), down.rbegin(), down.rend());
            return up;
        }
    }

    auto cycle_basis(const Graph & g) -> vector<vector<Vertex>>
    {
        auto f = bfs_forest(g);
        vector<vector<Vertex>> result;
        for (auto [u, v] : g.edges()) {
            if (f.parent[v] == u || f.parent[u] == v)
                continue;
            result.push_back(canonical_cycle(tree_cycle(f.parent, f.depth, u, v)));
        }
        return result;
    }

    auto check_cycle(const Graph & g, std::span<const Vertex> cycle) -> void
    {
        if (cycle.size() < 3)
            throw Error(ErrorKind::NotACycle, "a cycle needs at least three vertices");
        vector<char> seen(g.n(), 0);
        for (size_t i = 0; i < cycle.size(); ++i) {
            auto v = cycle[i], w = cycle[(i + 1) % cycle.size()];
            if (v >= g.n())
                throw Error(ErrorKind::NotACycle, "vertex " + to_string(v) + " out of range");
            if (seen[v])
                throw Error(ErrorKind::NotACycle, "vertex " + to_string(v) + " repeats");
            seen[v] = 1;
            if (! g.has_edge(v, w))
                throw Error(ErrorKind::NotACycle, "(" + to_string(v) + "," + to_string(w) + ") is not an edge");
        }
    }

    auto is_k3(const Graph & pattern) -> bool
    {
        return pattern.n() == 3 && pattern.edge_count() == 3;
    }

    namespace
    {
        auto step_wrap(const ColouredGraph & g, Vertex u, Vertex v) -> int64_t
        {
            return (g.sigma[u] + 1) % 3 == g.sigma[v] ? 1 : -1;
        }
    }

    auto wrap(const ColouredGraph & g, std::span<const Vertex> walk) -> int64_t
    {
        if (! is_k3(g.pattern))
            throw Error(ErrorKind::PatternNotK3, "wrap is defined for K3-coloured graphs");
        int64_t total = 0;
        for (size_t i = 0; i < walk.size(); ++i)
            if (walk[i] >= g.host.n())
                throw Error(ErrorKind::NotAWalk, "vertex " + to_string(walk[i]) + " out of range");
        for (size_t i = 0; i + 1 < walk.size(); ++i) {
            if (! g.host.has_edge(walk[i], walk[i + 1]))
                throw Error(ErrorKind::NotAWalk, "(" + to_string(walk[i]) + "," + to_string(walk[i + 1]) + ") is not an edge");
            total += step_wrap(g, walk[i], walk[i + 1]);
        }
        return total;
    }

    auto cycle_wrap(const ColouredGraph & g, std::span<const Vertex> cycle) -> int64_t
    {
        check_cycle(g.host, cycle);
        vector<Vertex> closed(cycle.begin(), cycle.end());
        closed.push_back(cycle.front());
        return wrap(g, closed);
    }

    auto colour_hom_to_P3inf(const ColouredGraph & g) -> LevelMap
    {
        if (! is_k3(g.pattern))
            throw Error(ErrorKind::PatternNotK3, "the infinite path is cyclically 3-coloured");

        const size_t n = g.host.n();
        const Vertex none = ~Vertex{0};
        vector<int64_t> level(n, 0);
        vector<char> seen(n, 0);
        vector<Vertex> parent(n, none);
        vector<size_t> depth(n, 0);

        for (Vertex root = 0; root < n; ++root) {
            if (seen[root])
                continue;
            seen[root] = 1;
            level[root] = g.sigma[root];
            std::queue<Vertex> q;
            q.push(root);
            while (! q.empty()) {
                auto u = q.front();
                q.pop();
                for (auto w : g.host.neighbours(u)) {
                    const int64_t expected = level[u] + step_wrap(g, u, w);
                    if (! seen[w]) {
                        seen[w] = 1;
                        level[w] = expected;
                        parent[w] = u;
                        depth[w] = depth[u] + 1;
                        q.push(w);
                    }
                    else if (level[w] != expected) {
                        // tree path u..w plus the edge wu wraps by level[w] - expected != 0
                        return LevelMap{std::nullopt, canonical_cycle(tree_cycle(parent, depth, u, w))};
                    }
                }
            }
        }
        return LevelMap{std::move(level), std::nullopt};
    }

    auto has_increasing_cycle(const ColouredGraph & g, const ColourOrdering & c, size_t max_count) -> std::optional<vector<Vertex>>
    {
        if (c.size() != g.pattern.n())
            throw Error(ErrorKind::InvalidInput, "ordering size differs from the pattern");
        auto list = enumerate_cycles(g.host, max_count, std::max<size_t>(3, g.pattern.n()));
        for (auto & cycle : list.cycles) {
            const size_t len = cycle.size();
            size_t ascents = 0;
            for (size_t i = 0; i < len; ++i)
                if (c(g.sigma[cycle[(i + 1) % len]]) > c(g.sigma[cycle[i]]))
                    ++ascents;
            if (ascents != 1 && ascents != len - 1)
                continue;
            auto oriented = cycle;
            if (ascents == 1)
                std::reverse(oriented.begin(), oriented.end());
            auto lowest = std::min_element(oriented.begin(), oriented.end(), [&](Vertex a, Vertex b) {
                return c(g.sigma[a]) < c(g.sigma[b]);
            });
            std::rotate(oriented.begin(), lowest, oriented.end());
            return oriented;
        }
        if (list.truncated_by_count)
            throw Error(ErrorKind::Truncated, "cycle enumeration hit its count cap");
        return std::nullopt;
    }

    auto cycle_order(const Graph & g) -> vector<Vertex>
    {
        if (g.n() < 3 || g.edge_count() != g.n())
            throw Error(ErrorKind::NotACycle, "graph is not a single cycle");
        for (Vertex v = 0; v < g.n(); ++v)
            if (g.degree(v) != 2)
                throw Error(ErrorKind::NotACycle, "vertex " + to_string(v) + " does not have degree 2");
        vector<Vertex> order{0};
        Vertex prev = 0, cur = g.neighbours(0)[0];
        while (cur != 0) {
            order.push_back(cur);
            auto nb = g.neighbours(cur);
            Vertex next = nb[0] == prev ? nb[1] : nb[0];
            prev = cur;
            cur = next;
        }
        if (order.size() != g.n())
            throw Error(ErrorKind::NotACycle, "graph is a union of several cycles");
        return order;
    }
}
