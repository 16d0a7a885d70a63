#include <eqgraph/abundance.hpp>
#include <eqgraph/error.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

using std::int64_t;
using std::size_t;
using std::string;
using std::vector;

namespace eqgraph
{
    using std::to_string;

    auto to_raw(const ColouredGraph & g) -> RawColouredGraph
    {
        return RawColouredGraph{g.host.n(), vector<Edge>(g.host.edges().begin(), g.host.edges().end()), g.sigma};
    }

    auto step_name(const Step & s) -> string
    {
        static const char * names[] = {"Atom", "Peel", "GlueBlowup", "Join", "Subgraph", "Blowup"};
        return names[s.index()];
    }

    namespace
    {
        [[noreturn]] auto fail(const string & what) -> void
        {
            throw Error(ErrorKind::InvalidInput, what);
        }

        auto check_vertex(Vertex v, const ColouredGraph & g, const char * what) -> void
        {
            if (v >= g.host.n())
                fail(string{what} + " vertex " + to_string(v) + " out of range");
        }

        auto check_distinct(vector<Vertex> s, const char * what) -> void
        {
            std::sort(s.begin(), s.end());
            if (std::adjacent_find(s.begin(), s.end()) != s.end())
                fail(string{what} + " lists a vertex twice");
        }

        // Maps must together be a bijection onto [0, total).
        auto check_maps(const vector<int64_t> & h_map, size_t h_n, const vector<int64_t> & h2_map, size_t h2_n,
            size_t total, const vector<char> & dropped) -> void
        {
            if (h_map.size() != h_n)
                fail("h_map has " + to_string(h_map.size()) + " entries, first child has " + to_string(h_n) + " vertices");
            if (h2_map.size() != h2_n)
                fail("h2_map has " + to_string(h2_map.size()) + " entries, second child has " + to_string(h2_n) + " vertices");
            vector<char> hit(total, 0);
            auto mark = [&](int64_t x, const char * which, size_t i) {
                if (x < 0 || static_cast<size_t>(x) >= total)
                    fail(string{which} + "[" + to_string(i) + "] = " + to_string(x) + " is not an output vertex");
                if (hit[x])
                    fail("output vertex " + to_string(x) + " is the image of two vertices");
                hit[x] = 1;
            };
            for (size_t i = 0; i < h_n; ++i) {
                if (dropped[i]) {
                    if (h_map[i] != -1)
                        fail("h_map must send the glued vertex " + to_string(i) + " to -1");
                    continue;
                }
                mark(h_map[i], "h_map", i);
            }
            for (size_t i = 0; i < h2_n; ++i)
                mark(h2_map[i], "h2_map", i);
        }

        auto apply_peel(const Graph & pattern, const PeelStep & p, const ColouredGraph & h) -> ColouredGraph
        {
            if (p.attach.empty())
                fail("peel attaches to no vertex");
            check_distinct(p.attach, "peel attach set");
            for (auto a : p.attach)
                check_vertex(a, h, "peel attach");
            const Vertex shared = h.sigma[p.attach.front()];
            for (auto a : p.attach)
                if (h.sigma[a] != shared)
                    fail("peel attach set is not monochromatic (vertex " + to_string(p.attach.front()) + " has colour " +
                        to_string(shared) + ", vertex " + to_string(a) + " has colour " + to_string(h.sigma[a]) + ")");
            if (p.colour >= pattern.n() || ! pattern.has_edge(shared, p.colour))
                fail("peel colour " + to_string(p.colour) + " is not adjacent in the pattern to colour " + to_string(shared));
            const auto fresh = static_cast<Vertex>(h.host.n());
            vector<Edge> edges(h.host.edges().begin(), h.host.edges().end());
            for (auto a : p.attach)
                edges.emplace_back(a, fresh);
            auto sigma = h.sigma;
            sigma.push_back(p.colour);
            return ColouredGraph{Graph{h.host.n() + 1, std::move(edges)}, pattern, std::move(sigma)};
        }

        auto apply_glue(const Graph & pattern, const GlueBlowupStep & s, const ColouredGraph & h, const ColouredGraph & h2) -> ColouredGraph
        {
            check_vertex(s.u, h, "glue u");
            check_vertex(s.v, h, "glue v");
            if (! h.host.has_edge(s.u, s.v))
                fail("glue edge (" + to_string(s.u) + "," + to_string(s.v) + ") is not an edge of the first child");
            if (s.u_set.empty() || s.v_set.empty())
                fail("glue sets U' and V' must be nonempty");
            auto both = s.u_set;
            both.insert(both.end(), s.v_set.begin(), s.v_set.end());
            check_distinct(both, "glue sets U' and V'");
            for (auto x : s.u_set) {
                check_vertex(x, h2, "glue U'");
                if (h2.sigma[x] != h.sigma[s.u])
                    fail("U' vertex " + to_string(x) + " has colour " + to_string(h2.sigma[x]) + ", u has colour " + to_string(h.sigma[s.u]));
            }
            for (auto y : s.v_set) {
                check_vertex(y, h2, "glue V'");
                if (h2.sigma[y] != h.sigma[s.v])
                    fail("V' vertex " + to_string(y) + " has colour " + to_string(h2.sigma[y]) + ", v has colour " + to_string(h.sigma[s.v]));
            }

            const size_t total = h.host.n() - 2 + h2.host.n();
            vector<char> dropped(h.host.n(), 0);
            dropped[s.u] = dropped[s.v] = 1;
            check_maps(s.h_map, h.host.n(), s.h2_map, h2.host.n(), total, dropped);

            auto hm = [&](Vertex x) { return static_cast<Vertex>(s.h_map[x]); };
            auto h2m = [&](Vertex x) { return static_cast<Vertex>(s.h2_map[x]); };
            vector<Edge> edges;
            vector<Vertex> sigma(total);
            for (Vertex x = 0; x < h.host.n(); ++x)
                if (! dropped[x])
                    sigma[hm(x)] = h.sigma[x];
            for (Vertex x = 0; x < h2.host.n(); ++x)
                sigma[h2m(x)] = h2.sigma[x];
            for (auto [x, y] : h.host.edges())
                if (! dropped[x] && ! dropped[y])
                    edges.push_back(make_edge(hm(x), hm(y)));
            for (auto [x, y] : h2.host.edges())
                edges.push_back(make_edge(h2m(x), h2m(y)));
            for (auto w : h.host.neighbours(s.u))
                if (w != s.v)
                    for (auto x : s.u_set)
                        edges.push_back(make_edge(h2m(x), hm(w)));
            for (auto w : h.host.neighbours(s.v))
                if (w != s.u)
                    for (auto y : s.v_set)
                        edges.push_back(make_edge(h2m(y), hm(w)));
            return ColouredGraph{Graph{total, std::move(edges)}, pattern, std::move(sigma)};
        }

        auto apply_join(const Graph & pattern, const JoinStep & s, const ColouredGraph & h, const ColouredGraph & h2) -> ColouredGraph
        {
            for (auto c : {s.a, s.b, s.a2})
                if (c >= pattern.n())
                    fail("join colour " + to_string(c) + " is not a pattern vertex");
            if (! pattern.has_edge(s.a, s.b))
                fail("join needs ab to be a pattern edge (a=" + to_string(s.a) + ", b=" + to_string(s.b) + ")");
            if (! pattern.has_edge(s.a, s.a2))
                fail("join needs aa' to be a pattern edge (a=" + to_string(s.a) + ", a'=" + to_string(s.a2) + ")");
            const size_t total = h.host.n() + h2.host.n();
            check_maps(s.h_map, h.host.n(), s.h2_map, h2.host.n(), total, vector<char>(h.host.n(), 0));

            auto hm = [&](Vertex x) { return static_cast<Vertex>(s.h_map[x]); };
            auto h2m = [&](Vertex x) { return static_cast<Vertex>(s.h2_map[x]); };
            vector<Edge> edges;
            vector<Vertex> sigma(total);
            for (Vertex x = 0; x < h.host.n(); ++x)
                sigma[hm(x)] = h.sigma[x];
            for (Vertex x = 0; x < h2.host.n(); ++x)
                sigma[h2m(x)] = h2.sigma[x];
            for (auto [x, y] : h.host.edges())
                edges.push_back(make_edge(hm(x), hm(y)));
            for (auto [x, y] : h2.host.edges())
                edges.push_back(make_edge(h2m(x), h2m(y)));
            for (Vertex x = 0; x < h.host.n(); ++x)
                for (Vertex y = 0; y < h2.host.n(); ++y)
                    if ((h.sigma[x] == s.a && h2.sigma[y] == s.a2) || (h.sigma[x] == s.b && h2.sigma[y] == s.a))
                        edges.push_back(make_edge(hm(x), h2m(y)));
            return ColouredGraph{Graph{total, std::move(edges)}, pattern, std::move(sigma)};
        }

        auto apply_subgraph(const Graph & pattern, const SubgraphStep & s, const ColouredGraph & h) -> ColouredGraph
        {
            check_distinct(s.keep, "subgraph keep list");
            for (auto k : s.keep)
                check_vertex(k, h, "subgraph keep");
            auto host = h.host.induced(s.keep);
            vector<Vertex> sigma;
            for (auto k : s.keep)
                sigma.push_back(h.sigma[k]);
            return ColouredGraph{std::move(host), pattern, std::move(sigma)};
        }
    }

    auto apply_step(const Graph & pattern, const Step & step, const vector<const ColouredGraph *> & children) -> ColouredGraph
    {
        static const size_t arity[] = {0, 1, 2, 2, 1, 1};
        if (children.size() != arity[step.index()])
            fail(step_name(step) + " takes " + to_string(arity[step.index()]) + " children, got " + to_string(children.size()));

        return std::visit([&](const auto & s) -> ColouredGraph {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, AtomStep>)
                fail("an atom has no reconstruction");
            else if constexpr (std::is_same_v<T, PeelStep>)
                return apply_peel(pattern, s, *children[0]);
            else if constexpr (std::is_same_v<T, GlueBlowupStep>)
                return apply_glue(pattern, s, *children[0], *children[1]);
            else if constexpr (std::is_same_v<T, JoinStep>)
                return apply_join(pattern, s, *children[0], *children[1]);
            else if constexpr (std::is_same_v<T, SubgraphStep>)
                return apply_subgraph(pattern, s, *children[0]);
            else {
                if (s.sizes.size() != children[0]->host.n())
                    fail("blow-up sizes has " + to_string(s.sizes.size()) + " entries for " + to_string(children[0]->host.n()) + " vertices");
                try {
                    return blow_up(*children[0], s.sizes);
                }
                catch (const Error & e) {
                    fail(e.what());
                }
            }
        },
            step);
    }

    namespace
    {
        auto describe_difference(const ColouredGraph & expected, const ColouredGraph & stated) -> string
        {
            if (expected.host.n() != stated.host.n())
                return "reconstruction has " + to_string(expected.host.n()) + " vertices, stated output has " + to_string(stated.host.n());
            for (size_t v = 0; v < expected.sigma.size(); ++v)
                if (expected.sigma[v] != stated.sigma[v])
                    return "vertex " + to_string(v) + " has colour " + to_string(stated.sigma[v]) + ", reconstruction gives " + to_string(expected.sigma[v]);
            auto e = expected.host.edges(), s = stated.host.edges();
            vector<Edge> missing, extra;
            std::set_difference(e.begin(), e.end(), s.begin(), s.end(), std::back_inserter(missing));
            std::set_difference(s.begin(), s.end(), e.begin(), e.end(), std::back_inserter(extra));
            if (! missing.empty())
                return "stated output lacks edge (" + to_string(missing[0].first) + "," + to_string(missing[0].second) + ")";
            return "stated output has extra edge (" + to_string(extra[0].first) + "," + to_string(extra[0].second) + ")";
        }

        auto realise(const Graph & pattern, const RawColouredGraph & raw) -> ColouredGraph
        {
            return validate_coloured(Graph{raw.n, raw.edges}, pattern, raw.sigma);
        }

        class Verifier
        {
        public:
            explicit Verifier(const AbundanceCertificate & cert) : _cert(cert) {}

            auto run() -> VerifyResult
            {
                for (size_t i = 0; i < _cert.nodes.size(); ++i)
                    if (! _index.emplace(_cert.nodes[i].id, i).second)
                        return reject(_cert.nodes[i].id, "duplicate node id");
                auto root = _index.find(_cert.root);
                if (root == _index.end())
                    return reject(_cert.root, "root node does not exist");

                _state.assign(_cert.nodes.size(), 0);
                _graphs.resize(_cert.nodes.size());
                if (! visit(root->second))
                    return std::move(_result);

                for (size_t i = 0; i < _cert.nodes.size(); ++i)
                    if (_state[i] != 2)
                        return reject(_cert.nodes[i].id, "node is not reachable from the root");

                ColouredGraph target;
                try {
                    target = realise(_cert.pattern, _cert.target);
                }
                catch (const Error & e) {
                    return reject(_cert.root, string{"target is not a valid coloured graph: "} + e.what());
                }
                const auto & got = *_graphs[root->second];
                VerifyResult ok{true, std::nullopt, false};
                if (got == target)
                    return ok;
                try {
                    if (canonical_form(got) == canonical_form(target)) {
                        ok.root_matched_by_canonical_form = true;
                        return ok;
                    }
                }
                catch (const Error & e) {
                    return reject(_cert.root, string{"cannot compare root with target: "} + e.what());
                }
                return reject(_cert.root, "root output is not colour-isomorphic to the target (" + describe_difference(target, got) + ")");
            }

        private:
            auto reject(const string & node, const string & why) -> VerifyResult
            {
                _result = VerifyResult{false, CertificateFailure{node, why}, false};
                return _result;
            }

            auto visit(size_t i) -> bool
            {
                const auto & node = _cert.nodes[i];
                if (_state[i] == 1) {
                    reject(node.id, "derivation contains a cycle");
                    return false;
                }
                if (_state[i] == 2) {
                    reject(node.id, "node is used twice in the derivation");
                    return false;
                }
                _state[i] = 1;

                vector<const ColouredGraph *> children;
                for (auto & cid : node.children) {
                    auto it = _index.find(cid);
                    if (it == _index.end()) {
                        reject(node.id, "child '" + cid + "' does not exist");
                        return false;
                    }
                    if (! visit(it->second))
                        return false;
                    children.push_back(&*_graphs[it->second]);
                }

                ColouredGraph stated;
                try {
                    stated = realise(_cert.pattern, node.output);
                }
                catch (const Error & e) {
                    reject(node.id, string{"output is not a valid coloured graph: "} + e.what());
                    return false;
                }

                if (std::holds_alternative<AtomStep>(node.step)) {
                    if (! node.children.empty()) {
                        reject(node.id, "an atom has no children");
                        return false;
                    }
                    if (stated.host.edge_count() > 1) {
                        reject(node.id, "an atom has at most one edge, found " + to_string(stated.host.edge_count()));
                        return false;
                    }
                }
                else {
                    ColouredGraph expected;
                    try {
                        expected = apply_step(_cert.pattern, node.step, children);
                    }
                    catch (const Error & e) {
                        reject(node.id, step_name(node.step) + ": " + e.what());
                        return false;
                    }
                    if (std::holds_alternative<SubgraphStep>(node.step)) {
                        if (expected.host.n() != stated.host.n() || expected.sigma != stated.sigma) {
                            reject(node.id, "Subgraph: " + describe_difference(expected, stated));
                            return false;
                        }
                        auto e = expected.host.edges();
                        for (auto edge : stated.host.edges())
                            if (! std::binary_search(e.begin(), e.end(), edge)) {
                                reject(node.id, "Subgraph: edge (" + to_string(edge.first) + "," + to_string(edge.second) + ") is not present in the child");
                                return false;
                            }
                    }
                    else if (! (expected.host == stated.host && expected.sigma == stated.sigma)) {
                        reject(node.id, step_name(node.step) + ": " + describe_difference(expected, stated));
                        return false;
                    }
                }

                _graphs[i] = std::move(stated);
                _state[i] = 2;
                return true;
            }

            const AbundanceCertificate & _cert;
            std::map<string, size_t> _index;
            vector<int> _state;
            vector<std::optional<ColouredGraph>> _graphs;
            VerifyResult _result;
        };
    }

    auto verify_certificate(const AbundanceCertificate & cert) -> VerifyResult
    {
        return Verifier{cert}.run();
    }

    namespace
    {
        class Canoniser
        {
        public:
            Canoniser(const ColouredGraph & g, std::uint64_t budget) : _g(g), _budget(budget) {}

            auto run() -> RawColouredGraph
            {
                vector<std::uint64_t> colour(_g.host.n());
                for (size_t v = 0; v < colour.size(); ++v)
                    colour[v] = _g.sigma[v];
                refine(colour);
                search(colour);
                return std::move(_best->graph);
            }

        private:
            // Equitable refinement; new colours are ranks of (colour,
            // sorted neighbour colours), so they depend only on the structure.
            auto refine(vector<std::uint64_t> & colour) -> void
            {
                if (++_calls > _budget)
                    throw Error(ErrorKind::BudgetExhausted, "canonical labelling exceeded its budget");
                const size_t n = colour.size();
                size_t classes = count_classes(colour);
                while (true) {
                    vector<std::pair<vector<std::uint64_t>, Vertex>> sig(n);
                    for (Vertex v = 0; v < n; ++v) {
                        auto & s = sig[v].first;
                        s.push_back(colour[v]);
                        for (auto w : _g.host.neighbours(v))
                            s.push_back(colour[w]);
                        std::sort(s.begin() + 1, s.end());
                        sig[v].second = v;
                    }
                    std::sort(sig.begin(), sig.end());
                    std::uint64_t rank = 0;
                    for (size_t i = 0; i < n; ++i) {
                        if (i > 0 && sig[i].first != sig[i - 1].first)
                            ++rank;
                        colour[sig[i].second] = rank;
                    }
                    size_t now = n == 0 ? 0 : rank + 1;
                    if (now == classes)
                        return;
                    classes = now;
                }
            }

            static auto count_classes(const vector<std::uint64_t> & colour) -> size_t
            {
                auto c = colour;
                std::sort(c.begin(), c.end());
                return static_cast<size_t>(std::unique(c.begin(), c.end()) - c.begin());
            }

            // Individualise each vertex of the first non-singleton cell in turn,
            // skipping twins and vertices in the orbit of an explored sibling
            // under the automorphisms found so far that fix the path.
            auto search(const vector<std::uint64_t> & colour) -> void
            {
                const size_t n = colour.size();
                vector<size_t> cell_size(n + 1, 0);
                for (auto c : colour)
                    ++cell_size[c];
                std::uint64_t target = n;
                for (std::uint64_t c = 0; c < n; ++c)
                    if (cell_size[c] > 1) {
                        target = c;
                        break;
                    }
                if (target == n) {
                    leaf(colour);
                    return;
                }
                std::set<vector<Vertex>> tried_neighbourhoods;
                vector<Vertex> explored;
                for (Vertex v = 0; v < n; ++v) {
                    if (colour[v] != target)
                        continue;
                    vector<Vertex> nb(_g.host.neighbours(v).begin(), _g.host.neighbours(v).end());
                    if (! tried_neighbourhoods.insert(nb).second)
                        continue; // twin of a vertex already individualised
                    if (! explored.empty()) {
                        auto root = orbit_roots();
                        if (std::any_of(explored.begin(), explored.end(), [&](Vertex u) { return root[u] == root[v]; }))
                            continue;
                    }
                    explored.push_back(v);
                    vector<std::uint64_t> next(n);
                    for (Vertex w = 0; w < n; ++w)
                        next[w] = 2 * colour[w] + (w == v ? 0 : 1);
                    _path.push_back(v);
                    refine(next);
                    search(next);
                    _path.pop_back();
                }
            }

            // Orbit representatives under the stored automorphisms fixing _path.
            auto orbit_roots() const -> vector<Vertex>
            {
                const size_t n = _g.host.n();
                vector<Vertex> parent(n);
                std::iota(parent.begin(), parent.end(), 0);
                auto find = [&](Vertex x) {
                    while (parent[x] != x)
                        x = parent[x] = parent[parent[x]];
                    return x;
                };
                for (auto & gamma : _automorphisms) {
                    if (! std::all_of(_path.begin(), _path.end(), [&](Vertex p) { return gamma[p] == p; }))
                        continue;
                    for (Vertex x = 0; x < n; ++x) {
                        auto a = find(x), b = find(gamma[x]);
                        if (a != b)
                            parent[std::max(a, b)] = std::min(a, b);
                    }
                }
                for (Vertex x = 0; x < n; ++x)
                    parent[x] = find(x);
                return parent;
            }

            struct Leaf
            {
                RawColouredGraph graph;
                vector<Vertex> at; // at[position] = vertex
            };

            auto leaf(const vector<std::uint64_t> & colour) -> void
            {
                Leaf l;
                auto & r = l.graph;
                r.n = colour.size();
                r.sigma.resize(r.n);
                l.at.resize(r.n);
                for (Vertex v = 0; v < r.n; ++v) {
                    r.sigma[colour[v]] = _g.sigma[v];
                    l.at[colour[v]] = v;
                }
                for (auto [u, v] : _g.host.edges())
                    r.edges.push_back(make_edge(static_cast<Vertex>(colour[u]), static_cast<Vertex>(colour[v])));
                std::sort(r.edges.begin(), r.edges.end());

                // equal relabelled graphs give the automorphism v -> other.at[colour[v]]
                auto record = [&](const Leaf & other) {
                    vector<Vertex> gamma(r.n);
                    bool identity = true;
                    for (Vertex v = 0; v < r.n; ++v) {
                        gamma[v] = other.at[colour[v]];
                        identity = identity && gamma[v] == v;
                    }
                    if (! identity)
                        _automorphisms.push_back(std::move(gamma));
                };
                if (_first && _first->graph == r) {
                    record(*_first);
                    return;
                }
                if (_best && _best->graph == r) {
                    record(*_best);
                    return;
                }
                if (! _first)
                    _first = l;
                if (! _best || std::tie(r.sigma, r.edges) < std::tie(_best->graph.sigma, _best->graph.edges))
                    _best = std::move(l);
            }

            const ColouredGraph & _g;
            std::uint64_t _budget;
            std::uint64_t _calls = 0;
            vector<Vertex> _path;
            vector<vector<Vertex>> _automorphisms;
            std::optional<Leaf> _first, _best;
        };
    }

    auto canonical_form(const ColouredGraph & g, std::uint64_t budget) -> RawColouredGraph
    {
        if (g.host.n() == 0)
            return RawColouredGraph{};
        return Canoniser{g, budget}.run();
    }
}
