#include <eqgraph/checked.hpp>
#include <eqgraph/constructions.hpp>
#include <eqgraph/error.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <unordered_map>

using std::int64_t;
using std::size_t;
using std::vector;

namespace eqgraph
{
    using std::to_string;

    auto to_string(SolveMode m) -> std::string_view
    {
        switch (m) {
        case SolveMode::Greedy: return "greedy";
        case SolveMode::Search: return "search";
        case SolveMode::Abstain: return "abstain";
        }
        return "unknown";
    }

    auto genus_split(const Equation & eq) -> GenusSplit
    {
        auto g = genus(eq);
        if (g.genus < 2)
            throw Error(ErrorKind::NotGenusTwo, "equation " + format_coefficient_list(eq.coefficients()) + " has genus " + to_string(g.genus));
        auto parts = g.witness.parts;
        while (parts.size() > 2) {
            parts[1].insert(parts[1].end(), parts[0].begin(), parts[0].end());
            std::sort(parts[1].begin(), parts[1].end());
            parts.erase(parts.begin());
        }
        GenusSplit split{parts[0], parts[1], {}, {}};
        for (auto i : split.x_indices)
            split.a.push_back(eq[i]);
        for (auto j : split.y_indices)
            split.b.push_back(eq[j]);
        return split;
    }

    namespace
    {
        // value of layer k (0-based) is alpha x + beta y
        auto layer_form(const GenusSplit & sp, size_t k) -> std::pair<int64_t, int64_t>
        {
            const size_t t = sp.b.size();
            if (k + 1 <= t - 1) {
                int64_t beta = 0;
                for (size_t j = 0; j < k; ++j)
                    beta += sp.b[j];
                return {sp.a[0], beta};
            }
            const size_t kk = k + 2 - t; // 1-based index into the lower layers
            int64_t alpha = 0;
            for (size_t i = kk; i < sp.a.size(); ++i)
                alpha -= sp.a[i];
            return {alpha, -sp.b[t - 1]};
        }
    }

    LayeredGraph::LayeredGraph(GenusSplit split, std::span<const int64_t> set) :
        _split(std::move(split))
    {
        const size_t layers = _split.a.size() + _split.b.size() - 1;
        _values.resize(layers);
        _forward.resize(layers);
        vector<std::unordered_map<int64_t, size_t>> index(layers);
        for (auto x : set)
            for (auto y : set) {
                if (x == y)
                    continue;
                _pairs.emplace_back(x, y);
                for (size_t k = 0; k < layers; ++k) {
                    const int64_t v = path_value(k, x, y);
                    auto [it, fresh] = index[k].try_emplace(v, _values[k].size());
                    if (fresh) {
                        _values[k].push_back(v);
                        _forward[k].emplace_back();
                    }
                    _path_store.push_back(it->second);
                }
                auto p = path(_pairs.size() - 1);
                for (size_t k = 0; k + 1 < layers; ++k)
                    _forward[k][p[k]].push_back(p[k + 1]);
            }
        for (size_t k = 0; k + 1 < layers; ++k)
            for (auto & f : _forward[k]) {
                std::sort(f.begin(), f.end(), [&](size_t i, size_t j) { return _values[k + 1][i] < _values[k + 1][j]; });
                f.erase(std::unique(f.begin(), f.end()), f.end());
            }
    }

    auto LayeredGraph::vertex_count() const -> size_t
    {
        size_t total = 0;
        for (auto & layer : _values)
            total += layer.size();
        return total;
    }

    auto LayeredGraph::path_value(size_t layer, int64_t x, int64_t y) const -> int64_t
    {
        auto [alpha, beta] = layer_form(_split, layer);
        return alpha * x + beta * y;
    }

    auto LayeredGraph::path(size_t p) const -> std::span<const size_t>
    {
        return std::span<const size_t>{_path_store}.subspan(p * layers(), layers());
    }

    auto LayeredGraph::step(size_t layer) const -> std::pair<int64_t, bool>
    {
        const size_t k = layer + 1, t = _split.b.size();
        if (k <= t - 1)
            return {_split.b[k - 1], false};
        return {_split.a[k - t + 1], true};
    }

    auto LayeredGraph::recover_pair(size_t layer, int64_t u, int64_t v) const -> std::optional<std::pair<int64_t, int64_t>>
    {
        if (layer + 1 >= layers())
            return std::nullopt;
        auto [coef, is_x] = step(layer);
        if ((v - u) % coef != 0)
            return std::nullopt;
        const int64_t w = (v - u) / coef;
        int64_t x, y;
        if (is_x) {
            x = w;
            auto [alpha, beta] = layer_form(_split, layer + 1);
            if ((v - alpha * x) % beta != 0)
                return std::nullopt;
            y = (v - alpha * x) / beta;
        }
        else {
            y = w;
            auto [alpha, beta] = layer_form(_split, layer);
            if ((u - beta * y) % alpha != 0)
                return std::nullopt;
            x = (u - beta * y) / alpha;
        }
        if (x == y || path_value(layer, x, y) != u || path_value(layer + 1, x, y) != v)
            return std::nullopt;
        return std::pair{x, y};
    }

    namespace
    {
        class PathWalk
        {
        public:
            PathWalk(const LayeredGraph & g, const vector<vector<char>> * alive, bool backtrack, size_t budget) :
                _g(g), _alive(alive), _backtrack(backtrack), _budget(budget)
            {
            }

            auto run() -> bool
            {
                auto [a1, unused] = layer_form(_g.split(), 0);
                for (size_t id = 0; id < _g.layer_size(0); ++id) {
                    if (! usable(0, id))
                        continue;
                    _vars.assign(1, _g.value(0, id) / a1);
                    if (walk(0, id))
                        return true;
                    if (_nodes >= _budget)
                        return false;
                }
                return false;
            }

            // introduction order: x_1, y_1 .. y_{t-1}, x_2 .. x_s, y_t
            [[nodiscard]] auto vars() const -> const vector<int64_t> & { return _vars; }
            [[nodiscard]] auto nodes() const -> size_t { return _nodes; }

        private:
            auto usable(size_t layer, size_t id) const -> bool { return ! _alive || (*_alive)[layer][id]; }

            auto fresh(int64_t v) const -> bool { return std::find(_vars.begin(), _vars.end(), v) == _vars.end(); }

            auto walk(size_t layer, size_t id) -> bool
            {
                if (++_nodes > _budget)
                    return false;
                if (layer + 1 == _g.layers())
                    return true;
                auto [coef, is_x] = _g.step(layer);
                const bool last = layer + 2 == _g.layers();
                const int64_t bt = _g.split().b.back();
                for (auto next : _g.forward(layer, id)) {
                    if (! usable(layer + 1, next))
                        continue;
                    const int64_t w = (_g.value(layer + 1, next) - _g.value(layer, id)) / coef;
                    if (! fresh(w))
                        continue;
                    _vars.push_back(w);
                    if (last) {
                        const int64_t yt = -_g.value(layer + 1, next) / bt;
                        if (! fresh(yt)) {
                            _vars.pop_back();
                            continue;
                        }
                        _vars.push_back(yt);
                    }
                    if (walk(layer + 1, next))
                        return true;
                    _vars.resize(_vars.size() - (last ? 2 : 1));
                    if (! _backtrack || _nodes >= _budget)
                        return false;
                }
                return false;
            }

            const LayeredGraph & _g;
            const vector<vector<char>> * _alive;
            bool _backtrack;
            size_t _budget;
            size_t _nodes = 0;
            vector<int64_t> _vars;
        };

        // |P| / 2n sparsification; returns surviving vertices per layer
        auto sparsify(const LayeredGraph & g, double threshold, size_t & surviving) -> vector<vector<char>>
        {
            const size_t layers = g.layers();
            vector<size_t> offset(layers + 1, 0);
            for (size_t k = 0; k < layers; ++k)
                offset[k + 1] = offset[k] + g.layer_size(k);
            const size_t nv = offset[layers];

            vector<size_t> count(nv, 0), start(nv + 1, 0);
            for (size_t p = 0; p < g.path_count(); ++p) {
                auto ids = g.path(p);
                for (size_t k = 0; k < layers; ++k)
                    ++count[offset[k] + ids[k]];
            }
            for (size_t v = 0; v < nv; ++v)
                start[v + 1] = start[v] + count[v];
            vector<size_t> through(start[nv]), fill(start.begin(), start.end() - 1);
            for (size_t p = 0; p < g.path_count(); ++p) {
                auto ids = g.path(p);
                for (size_t k = 0; k < layers; ++k)
                    through[fill[offset[k] + ids[k]]++] = p;
            }

            auto low = [&](size_t v) { return count[v] > 0 && static_cast<double>(count[v]) < threshold; };
            vector<char> path_alive(g.path_count(), 1);
            std::deque<size_t> queue;
            for (size_t v = 0; v < nv; ++v)
                if (low(v))
                    queue.push_back(v);
            surviving = g.path_count();
            while (! queue.empty()) {
                auto v = queue.front();
                queue.pop_front();
                if (! low(v))
                    continue;
                for (size_t i = start[v]; i < start[v + 1]; ++i) {
                    auto p = through[i];
                    if (! path_alive[p])
                        continue;
                    path_alive[p] = 0;
                    --surviving;
                    auto ids = g.path(p);
                    for (size_t k = 0; k < layers; ++k) {
                        auto u = offset[k] + ids[k];
                        --count[u];
                        if (low(u))
                            queue.push_back(u);
                    }
                }
            }

            vector<vector<char>> alive(layers);
            for (size_t k = 0; k < layers; ++k) {
                alive[k].resize(g.layer_size(k));
                for (size_t id = 0; id < g.layer_size(k); ++id)
                    alive[k][id] = count[offset[k] + id] > 0;
            }
            return alive;
        }

        auto least_m(auto && ok) -> int64_t
        {
            int64_t m = 0;
            while (! ok(m))
                ++m;
            return m;
        }
    }

    auto find_distinct_solution(const Equation & eq, std::span<const int64_t> set, int64_t n, size_t search_budget) -> DistinctSolveResult
    {
        if (n < 1)
            throw Error(ErrorKind::InvalidInput, "N must be positive");
        vector<int64_t> a(set.begin(), set.end());
        std::sort(a.begin(), a.end());
        if (std::adjacent_find(a.begin(), a.end()) != a.end())
            throw Error(ErrorKind::InvalidInput, "set has repeated members");
        if (! a.empty() && (a.front() < 1 || a.back() > n))
            throw Error(ErrorKind::InvalidInput, "set must lie in [1, N]");

        DistinctSolveResult r;
        r.split = genus_split(eq);
        r.s = r.split.a.size();
        r.t = r.split.b.size();
        r.set_size = a.size();
        int64_t weight = 0;
        for (auto c : eq.coefficients())
            weight = checked_add(weight, std::abs(c));
        checked_mul(weight, n); // every layer value stays within weight * N
        r.c_proof = static_cast<int64_t>(r.s + r.t - 1) * weight;
        for (size_t k = 0; k < r.s + r.t - 1; ++k) {
            auto [alpha, beta] = layer_form(r.split, k);
            r.vertex_bound += alpha == 0 || beta == 0 ? n : (std::abs(alpha) + std::abs(beta)) * (n - 1) + 1;
        }
        const int64_t st = static_cast<int64_t>(r.s + r.t);
        r.degree_needed = static_cast<size_t>(2 * st);
        const auto m = static_cast<int64_t>(a.size());
        r.degree_bound = static_cast<double>(m) * static_cast<double>(m - 1) / (2.0 * static_cast<double>(r.vertex_bound));
        r.guarantee = m * (m - 1) >= 4 * st * r.vertex_bound;
        const BigCount proof_rhs = BigCount{8} * r.c_proof * st * n;
        r.threshold_proof = least_m([&](int64_t x) { return BigCount{x} * x >= proof_rhs; });
        r.threshold_layers = least_m([&](int64_t x) { return x * (x - 1) >= 4 * st * r.vertex_bound; });

        if (m < st)
            return r; // too few members for distinct values

        LayeredGraph g{r.split, a};
        r.vertices = g.vertex_count();
        r.paths = g.path_count();
        r.surviving_paths = r.paths;

        std::optional<vector<int64_t>> vars;
        if (r.guarantee) {
            auto alive = sparsify(g, static_cast<double>(r.paths) / (2.0 * static_cast<double>(r.vertex_bound)), r.surviving_paths);
            PathWalk greedy{g, &alive, false, search_budget};
            if (greedy.run()) {
                vars = greedy.vars();
                r.mode = SolveMode::Greedy;
            }
            r.search_nodes = greedy.nodes();
        }
        if (! vars) {
            PathWalk search{g, nullptr, true, search_budget};
            if (search.run()) {
                vars = search.vars();
                r.mode = SolveMode::Search;
            }
            r.search_nodes += search.nodes();
        }
        if (! vars)
            return r;

        vector<int64_t> assignment(eq.size());
        const auto & v = *vars;
        assignment[r.split.x_indices[0]] = v[0];
        for (size_t j = 0; j + 1 < r.t; ++j)
            assignment[r.split.y_indices[j]] = v[1 + j];
        for (size_t i = 1; i < r.s; ++i)
            assignment[r.split.x_indices[i]] = v[r.t - 1 + i];
        assignment[r.split.y_indices[r.t - 1]] = v[r.s + r.t - 1];
        for (auto x : assignment)
            if (! std::binary_search(a.begin(), a.end(), x))
                throw std::logic_error("distinct solution uses a value outside the set");
        if (classify_solution(eq, assignment) != SolutionClass::AllDistinct)
            throw std::logic_error("distinct solution failed its own check");
        r.assignment = std::move(assignment);
        return r;
    }
}
