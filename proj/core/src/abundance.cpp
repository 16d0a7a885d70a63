#include <eqgraph/abundance.hpp>
#include <eqgraph/error.hpp>

#include <algorithm>
#include <numeric>

using std::int64_t;
using std::size_t;
using std::string;
using std::vector;

namespace eqgraph
{
    using std::to_string;

    CertificateBuilder::CertificateBuilder(Graph pattern) :
        _pattern(std::move(pattern))
    {
    }

    auto CertificateBuilder::add(Step step, vector<Ref> children, ColouredGraph out, vector<Vertex> labels) -> Ref
    {
        auto sorted = labels;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw Error(ErrorKind::InvalidInput, "certificate builder: a label occurs twice in one graph");

        CertificateNode node;
        node.id = "n" + to_string(_nodes.size());
        node.step = std::move(step);
        for (auto c : children)
            node.children.push_back(_nodes[c.index].id);
        node.output = to_raw(out);
        _nodes.push_back(std::move(node));
        _graphs.push_back(std::move(out));
        _labels.push_back(std::move(labels));
        return Ref{_nodes.size() - 1};
    }

    auto CertificateBuilder::index_of(Ref r, Vertex label) const -> Vertex
    {
        const auto & l = _labels[r.index];
        auto it = std::find(l.begin(), l.end(), label);
        if (it == l.end())
            throw Error(ErrorKind::InvalidInput, "certificate builder: unknown label " + to_string(label));
        return static_cast<Vertex>(it - l.begin());
    }

    auto CertificateBuilder::atom(vector<Vertex> labels, vector<Vertex> colours, vector<Edge> label_edges) -> Ref
    {
        if (label_edges.size() > 1)
            throw Error(ErrorKind::InvalidInput, "an atom has at most one edge");
        auto pos = [&](Vertex label) {
            auto it = std::find(labels.begin(), labels.end(), label);
            if (it == labels.end())
                throw Error(ErrorKind::InvalidInput, "certificate builder: unknown label " + to_string(label));
            return static_cast<Vertex>(it - labels.begin());
        };
        vector<Edge> edges;
        for (auto [a, b] : label_edges)
            edges.push_back(make_edge(pos(a), pos(b)));
        auto out = validate_coloured(Graph{labels.size(), std::move(edges)}, _pattern, std::move(colours));
        return add(AtomStep{}, {}, std::move(out), std::move(labels));
    }

    auto CertificateBuilder::peel(Ref child, Vertex label, vector<Vertex> attach_labels, Vertex colour) -> Ref
    {
        PeelStep step;
        for (auto a : attach_labels)
            step.attach.push_back(index_of(child, a));
        step.colour = colour;
        auto out = apply_step(_pattern, step, {&_graphs[child.index]});
        auto labels = _labels[child.index];
        labels.push_back(label);
        return add(std::move(step), {child}, std::move(out), std::move(labels));
    }

    auto CertificateBuilder::glue(Ref h, Vertex u_label, Vertex v_label, Ref h2, vector<Vertex> u_set_labels, vector<Vertex> v_set_labels) -> Ref
    {
        GlueBlowupStep step;
        step.u = index_of(h, u_label);
        step.v = index_of(h, v_label);
        for (auto x : u_set_labels)
            step.u_set.push_back(index_of(h2, x));
        for (auto y : v_set_labels)
            step.v_set.push_back(index_of(h2, y));

        vector<Vertex> labels;
        const auto & hl = _labels[h.index];
        for (size_t i = 0; i < hl.size(); ++i) {
            if (i == step.u || i == step.v)
                step.h_map.push_back(-1);
            else {
                step.h_map.push_back(static_cast<int64_t>(labels.size()));
                labels.push_back(hl[i]);
            }
        }
        for (auto x : _labels[h2.index]) {
            step.h2_map.push_back(static_cast<int64_t>(labels.size()));
            labels.push_back(x);
        }
        auto out = apply_step(_pattern, step, {&_graphs[h.index], &_graphs[h2.index]});
        return add(std::move(step), {h, h2}, std::move(out), std::move(labels));
    }

    auto CertificateBuilder::join(Ref h, Ref h2, Vertex a, Vertex b, Vertex a2) -> Ref
    {
        JoinStep step{a, b, a2, {}, {}};
        vector<Vertex> labels;
        for (auto x : _labels[h.index]) {
            step.h_map.push_back(static_cast<int64_t>(labels.size()));
            labels.push_back(x);
        }
        for (auto x : _labels[h2.index]) {
            step.h2_map.push_back(static_cast<int64_t>(labels.size()));
            labels.push_back(x);
        }
        auto out = apply_step(_pattern, step, {&_graphs[h.index], &_graphs[h2.index]});
        return add(std::move(step), {h, h2}, std::move(out), std::move(labels));
    }

    auto CertificateBuilder::subgraph(Ref child, vector<Vertex> keep_labels, vector<Edge> label_edges) -> Ref
    {
        SubgraphStep step;
        for (auto k : keep_labels)
            step.keep.push_back(index_of(child, k));
        auto induced = apply_step(_pattern, step, {&_graphs[child.index]});
        auto pos = [&](Vertex label) {
            auto it = std::find(keep_labels.begin(), keep_labels.end(), label);
            if (it == keep_labels.end())
                throw Error(ErrorKind::InvalidInput, "certificate builder: edge label " + to_string(label) + " is not kept");
            return static_cast<Vertex>(it - keep_labels.begin());
        };
        vector<Edge> edges;
        for (auto [a, b] : label_edges) {
            auto e = make_edge(pos(a), pos(b));
            if (! induced.host.has_edge(e.first, e.second))
                throw Error(ErrorKind::InvalidInput, "certificate builder: subgraph edge missing from child");
            edges.push_back(e);
        }
        ColouredGraph out{Graph{keep_labels.size(), std::move(edges)}, _pattern, induced.sigma};
        return add(std::move(step), {child}, std::move(out), std::move(keep_labels));
    }

    auto CertificateBuilder::blowup(Ref child, vector<size_t> sizes, vector<vector<Vertex>> new_labels) -> Ref
    {
        BlowupStep step{sizes};
        auto out = apply_step(_pattern, step, {&_graphs[child.index]});
        vector<Vertex> labels;
        for (size_t v = 0; v < sizes.size(); ++v) {
            if (new_labels.at(v).size() != sizes[v])
                throw Error(ErrorKind::InvalidInput, "certificate builder: blow-up labels do not match sizes");
            labels.insert(labels.end(), new_labels[v].begin(), new_labels[v].end());
        }
        return add(std::move(step), {child}, std::move(out), std::move(labels));
    }

    auto CertificateBuilder::finish(Ref root, const ColouredGraph & target) -> AbundanceCertificate
    {
        vector<Vertex> identity(target.host.n());
        std::iota(identity.begin(), identity.end(), 0);
        if (! (_labels[root.index] == identity && _graphs[root.index] == target)) {
            vector<Edge> edges(target.host.edges().begin(), target.host.edges().end());
            root = subgraph(root, identity, edges);
        }
        AbundanceCertificate cert;
        cert.pattern = _pattern;
        cert.target = to_raw(target);
        cert.root = _nodes[root.index].id;
        cert.nodes = _nodes;
        return cert;
    }

    auto peel_order_search(const ColouredGraph & g) -> std::optional<PeelOrder>
    {
        const size_t n = g.host.n();
        vector<char> alive(n, 1);
        size_t live_edges = g.host.edge_count();
        PeelOrder result;
        vector<vector<Vertex>> attach;

        auto live_neighbours = [&](Vertex v) {
            vector<Vertex> out;
            for (auto w : g.host.neighbours(v))
                if (alive[w])
                    out.push_back(w);
            return out;
        };

        while (live_edges > 1) {
            bool removed = false;
            for (Vertex v = 0; v < n && ! removed; ++v) {
                if (! alive[v])
                    continue;
                auto nb = live_neighbours(v);
                if (nb.empty())
                    continue;
                bool mono = std::all_of(nb.begin(), nb.end(), [&](Vertex w) { return g.sigma[w] == g.sigma[nb[0]]; });
                if (! mono)
                    continue;
                alive[v] = 0;
                live_edges -= nb.size();
                result.removal_order.push_back(v);
                attach.push_back(std::move(nb));
                removed = true;
            }
            if (! removed)
                return std::nullopt;
        }

        CertificateBuilder builder{g.pattern};
        vector<Vertex> colours;
        vector<Edge> edges;
        for (Vertex v = 0; v < n; ++v)
            if (alive[v]) {
                result.atom_vertices.push_back(v);
                colours.push_back(g.sigma[v]);
                for (auto w : g.host.neighbours(v))
                    if (alive[w] && v < w)
                        edges.emplace_back(v, w);
            }
        auto node = builder.atom(result.atom_vertices, colours, edges);
        for (size_t i = result.removal_order.size(); i-- > 0;) {
            auto v = result.removal_order[i];
            node = builder.peel(node, v, attach[i], g.sigma[v]);
        }
        result.certificate = builder.finish(node, g);
        return result;
    }

    namespace
    {
        class Splitter
        {
        public:
            Splitter(const ColouredGraph & g, std::uint64_t budget) : _g(g), _budget(budget), _builder(g.pattern) {}

            auto run() -> std::optional<SplitResult>
            {
                vector<Vertex> all(_g.host.n());
                std::iota(all.begin(), all.end(), 0);
                auto root = decompose(all);
                if (! root)
                    return std::nullopt;
                return SplitResult{_builder.finish(*root, _g), _joins};
            }

        private:
            auto edges_within(const vector<char> & in) const -> vector<Edge>
            {
                vector<Edge> out;
                for (auto [u, v] : _g.host.edges())
                    if (in[u] && in[v])
                        out.emplace_back(u, v);
                return out;
            }

            auto decompose(const vector<Vertex> & s) -> std::optional<CertificateBuilder::Ref>
            {
                vector<char> in(_g.host.n(), 0);
                for (auto v : s)
                    in[v] = 1;
                auto edges = edges_within(in);

                if (edges.size() <= 1) {
                    vector<Vertex> colours;
                    for (auto v : s)
                        colours.push_back(_g.sigma[v]);
                    return _builder.atom(s, colours, edges);
                }

                for (auto [a, b] : _g.pattern.edges()) {
                    if (++_attempts > _budget)
                        throw Error(ErrorKind::BudgetExhausted, "splittable search exceeded its budget");

                    // components of G[S] without its {a,b}-coloured edges
                    auto spans_ab = [&](Edge e) {
                        auto x = _g.sigma[e.first], y = _g.sigma[e.second];
                        return (x == a && y == b) || (x == b && y == a);
                    };
                    vector<Edge> kept;
                    for (auto e : edges)
                        if (! spans_ab(e))
                            kept.push_back(e);
                    vector<Vertex> comp(_g.host.n(), ~Vertex{0});
                    vector<vector<Vertex>> adj(_g.host.n());
                    for (auto [u, v] : kept) {
                        adj[u].push_back(v);
                        adj[v].push_back(u);
                    }
                    vector<vector<Vertex>> parts;
                    for (auto root : s) {
                        if (comp[root] != ~Vertex{0})
                            continue;
                        parts.emplace_back();
                        vector<Vertex> stack{root};
                        comp[root] = static_cast<Vertex>(parts.size() - 1);
                        while (! stack.empty()) {
                            auto x = stack.back();
                            stack.pop_back();
                            parts.back().push_back(x);
                            for (auto y : adj[x])
                                if (comp[y] == ~Vertex{0}) {
                                    comp[y] = comp[root];
                                    stack.push_back(y);
                                }
                        }
                    }
                    if (parts.size() < 2)
                        continue;

                    for (auto & part : parts) {
                        vector<char> in1(_g.host.n(), 0);
                        for (auto v : part)
                            in1[v] = 1;
                        size_t e1 = 0, e2 = 0;
                        for (auto [u, v] : edges) {
                            if (in1[u] && in1[v])
                                ++e1;
                            else if (! in1[u] && ! in1[v])
                                ++e2;
                        }
                        if (e1 >= edges.size() || e2 >= edges.size())
                            continue;

                        vector<Vertex> s1, s2;
                        for (auto v : s)
                            (in1[v] ? s1 : s2).push_back(v);
                        auto left = decompose(s1);
                        if (! left)
                            return std::nullopt;
                        auto right = decompose(s2);
                        if (! right)
                            return std::nullopt;
                        auto joined = _builder.join(*left, *right, a, b, b);
                        ++_joins;
                        auto order = _builder.labels(joined);
                        return _builder.subgraph(joined, order, edges);
                    }
                }
                return std::nullopt;
            }

            const ColouredGraph & _g;
            std::uint64_t _budget;
            std::uint64_t _attempts = 0;
            size_t _joins = 0;
            CertificateBuilder _builder;
        };
    }

    auto splittable_decompose(const ColouredGraph & g, std::uint64_t budget) -> std::optional<SplitResult>
    {
        return Splitter{g, budget}.run();
    }

    namespace
    {
        auto check_surjective(const ColouredGraph & g) -> void
        {
            vector<char> used(g.pattern.n(), 0);
            for (auto c : g.sigma)
                used[c] = 1;
            for (Vertex c = 0; c < g.pattern.n(); ++c)
                if (! used[c])
                    throw Error(ErrorKind::NotSurjective, "colour " + to_string(c) + " is not used");
        }
    }

    auto double_along_edge(const ColouredGraph & g, Edge e) -> ColouredGraph
    {
        const auto [a, b] = e;
        if (! g.pattern.has_edge(a, b))
            throw Error(ErrorKind::InvalidInput, "(" + to_string(a) + "," + to_string(b) + ") is not an edge of the pattern");
        check_surjective(g);

        const auto n = static_cast<Vertex>(g.host.n());
        vector<Edge> edges;
        for (auto [u, v] : g.host.edges()) {
            edges.emplace_back(u, v);
            edges.emplace_back(u + n, v + n);
        }
        for (Vertex x = 0; x < n; ++x)
            for (Vertex y = 0; y < n; ++y)
                if ((g.sigma[x] == a && g.sigma[y] == b) || (g.sigma[x] == b && g.sigma[y] == a))
                    edges.emplace_back(x, y + n);
        auto sigma = g.sigma;
        sigma.insert(sigma.end(), g.sigma.begin(), g.sigma.end());
        return ColouredGraph{Graph{2 * g.host.n(), std::move(edges)}, g.pattern, std::move(sigma)};
    }

    auto build_Hm(const ColouredGraph & seed, size_t m) -> ColouredGraph
    {
        if (seed.pattern.edge_count() == 0)
            throw Error(ErrorKind::InvalidInput, "the pattern has no edges to double along");
        if (m >= 40 || (seed.host.n() << m) > max_hm_vertices)
            throw Error(ErrorKind::ScaleExceeded, "H^" + to_string(m) + " would exceed " + to_string(max_hm_vertices) + " vertices");
        check_surjective(seed);
        auto h = seed;
        auto edges = seed.pattern.edges();
        for (size_t j = 0; j < m; ++j)
            h = double_along_edge(h, edges[j % edges.size()]);
        return h;
    }

    auto bijective_seed(const Graph & pattern) -> ColouredGraph
    {
        vector<Vertex> sigma(pattern.n());
        std::iota(sigma.begin(), sigma.end(), 0);
        return ColouredGraph{Graph{pattern.n(), {}}, pattern, std::move(sigma)};
    }
}
