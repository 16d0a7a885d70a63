#include <eqgraph/error.hpp>
#include <eqgraph/io.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

using std::int64_t;
using std::size_t;
using std::string;
using std::vector;

namespace eqgraph
{
    using std::to_string;

    namespace
    {
        [[noreturn]] auto bad(const string & what) -> void
        {
            throw Error(ErrorKind::InvalidInput, what);
        }

        auto field(const Json & j, const char * name) -> const Json &
        {
            if (! j.is_object())
                bad(string{"expected an object with \""} + name + "\"");
            auto it = j.find(name);
            if (it == j.end())
                bad(string{"missing field \""} + name + "\"");
            return *it;
        }

        auto as_int(const Json & j, const char * what) -> int64_t
        {
            if (! j.is_number_integer())
                bad(string{what} + " must be an integer");
            return j.get<int64_t>();
        }

        auto as_index(const Json & j, const char * what) -> size_t
        {
            auto v = as_int(j, what);
            if (v < 0 || v > (int64_t{1} << 32))
                bad(string{what} + " out of range");
            return static_cast<size_t>(v);
        }

        auto int_list(const Json & j, const char * what) -> vector<int64_t>
        {
            if (! j.is_array())
                bad(string{what} + " must be an array");
            vector<int64_t> out;
            for (auto & x : j)
                out.push_back(as_int(x, what));
            return out;
        }

        auto index_list(const Json & j, const char * what) -> vector<Vertex>
        {
            if (! j.is_array())
                bad(string{what} + " must be an array");
            vector<Vertex> out;
            for (auto & x : j)
                out.push_back(static_cast<Vertex>(as_index(x, what)));
            return out;
        }

        auto edge_list(const Json & j) -> vector<Edge>
        {
            if (! j.is_array())
                bad("edges must be an array");
            vector<Edge> out;
            for (auto & e : j) {
                if (! e.is_array() || e.size() != 2)
                    bad("each edge is a pair [u, v]");
                out.emplace_back(static_cast<Vertex>(as_index(e[0], "edge endpoint")), static_cast<Vertex>(as_index(e[1], "edge endpoint")));
            }
            return out;
        }

        auto edges_json(std::span<const Edge> edges) -> Json
        {
            Json out = Json::array();
            for (auto [u, v] : edges)
                out.push_back({u, v});
            return out;
        }

        auto vertices_json(std::span<const Vertex> vs) -> Json
        {
            return Json(vector<Vertex>(vs.begin(), vs.end()));
        }
    }

    auto parse_json_text(const string & text) -> Json
    {
        try {
            return Json::parse(text);
        }
        catch (const nlohmann::json::parse_error & e) {
            bad(string{"malformed JSON: "} + e.what());
        }
    }

    auto read_json_file(const std::filesystem::path & path) -> Json
    {
        std::ifstream in{path};
        if (! in)
            bad("cannot read " + path.string());
        std::stringstream text;
        text << in.rdbuf();
        return parse_json_text(text.str());
    }

    auto dump(const Json & j, bool pretty) -> string
    {
        return j.dump(pretty ? 2 : -1);
    }

    auto graph_json(const Graph & g) -> Json
    {
        return Json{{"n", g.n()}, {"edges", edges_json(g.edges())}};
    }

    auto parse_graph(const Json & j) -> Graph
    {
        return Graph{as_index(field(j, "n"), "n"), edge_list(field(j, "edges"))};
    }

    auto parse_host(const Json & j) -> Graph
    {
        if (j.is_object() && j.contains("host"))
            return parse_graph(j["host"]);
        return parse_graph(j);
    }

    auto coloured_json(const ColouredGraph & g) -> Json
    {
        return Json{{"pattern", graph_json(g.pattern)}, {"host", graph_json(g.host)}, {"sigma", vertices_json(g.sigma)}};
    }

    auto parse_coloured(const Json & j) -> ColouredGraph
    {
        return validate_coloured(parse_graph(field(j, "host")), parse_graph(field(j, "pattern")), index_list(field(j, "sigma"), "sigma"));
    }

    auto raw_json(const RawColouredGraph & g) -> Json
    {
        return Json{{"n", g.n}, {"edges", edges_json(g.edges)}, {"sigma", vertices_json(g.sigma)}};
    }

    auto parse_raw(const Json & j) -> RawColouredGraph
    {
        return RawColouredGraph{as_index(field(j, "n"), "n"), edge_list(field(j, "edges")), index_list(field(j, "sigma"), "sigma")};
    }

    namespace
    {
        auto params_json(const Step & step) -> Json
        {
            return std::visit([](const auto & s) -> Json {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, AtomStep>)
                    return Json::object();
                else if constexpr (std::is_same_v<T, PeelStep>)
                    return Json{{"attach", vertices_json(s.attach)}, {"colour", s.colour}};
                else if constexpr (std::is_same_v<T, GlueBlowupStep>)
                    return Json{{"u", s.u}, {"v", s.v}, {"u_set", vertices_json(s.u_set)}, {"v_set", vertices_json(s.v_set)},
                        {"h_map", s.h_map}, {"h2_map", s.h2_map}};
                else if constexpr (std::is_same_v<T, JoinStep>)
                    return Json{{"a", s.a}, {"b", s.b}, {"a2", s.a2}, {"h_map", s.h_map}, {"h2_map", s.h2_map}};
                else if constexpr (std::is_same_v<T, SubgraphStep>)
                    return Json{{"keep", vertices_json(s.keep)}};
                else
                    return Json{{"sizes", s.sizes}};
            }, step);
        }

        auto parse_step(const string & kind, const Json & p) -> Step
        {
            auto vertex = [&](const char * name) { return static_cast<Vertex>(as_index(field(p, name), name)); };
            if (kind == "Atom")
                return AtomStep{};
            if (kind == "Peel")
                return PeelStep{index_list(field(p, "attach"), "attach"), vertex("colour")};
            if (kind == "GlueBlowup")
                return GlueBlowupStep{vertex("u"), vertex("v"), index_list(field(p, "u_set"), "u_set"), index_list(field(p, "v_set"), "v_set"),
                    int_list(field(p, "h_map"), "h_map"), int_list(field(p, "h2_map"), "h2_map")};
            if (kind == "Join")
                return JoinStep{vertex("a"), vertex("b"), vertex("a2"), int_list(field(p, "h_map"), "h_map"), int_list(field(p, "h2_map"), "h2_map")};
            if (kind == "Subgraph")
                return SubgraphStep{index_list(field(p, "keep"), "keep")};
            if (kind == "Blowup") {
                vector<size_t> sizes;
                for (auto x : int_list(field(p, "sizes"), "sizes")) {
                    if (x < 0)
                        bad("sizes must be nonnegative");
                    sizes.push_back(static_cast<size_t>(x));
                }
                return BlowupStep{std::move(sizes)};
            }
            bad("unknown step kind \"" + kind + "\"");
        }

        auto as_string(const Json & j, const char * what) -> string
        {
            if (! j.is_string())
                bad(string{what} + " must be a string");
            return j.get<string>();
        }
    }

    auto certificate_json(const AbundanceCertificate & cert) -> Json
    {
        Json nodes = Json::array();
        for (auto & node : cert.nodes)
            nodes.push_back(Json{{"id", node.id}, {"kind", step_name(node.step)}, {"params", params_json(node.step)},
                {"children", node.children}, {"output_graph", raw_json(node.output)}});
        return Json{{"pattern", graph_json(cert.pattern)}, {"target", raw_json(cert.target)}, {"root", cert.root}, {"nodes", std::move(nodes)}};
    }

    auto parse_certificate(const Json & j) -> AbundanceCertificate
    {
        AbundanceCertificate cert;
        cert.pattern = parse_graph(field(j, "pattern"));
        cert.target = parse_raw(field(j, "target"));
        cert.root = as_string(field(j, "root"), "root");
        const auto & nodes = field(j, "nodes");
        if (! nodes.is_array())
            bad("nodes must be an array");
        for (auto & n : nodes) {
            CertificateNode node;
            node.id = as_string(field(n, "id"), "id");
            node.step = parse_step(as_string(field(n, "kind"), "kind"), field(n, "params"));
            const auto & children = field(n, "children");
            if (! children.is_array())
                bad("children must be an array");
            for (auto & c : children)
                node.children.push_back(as_string(c, "child id"));
            node.output = parse_raw(field(n, "output_graph"));
            cert.nodes.push_back(std::move(node));
        }
        return cert;
    }

    auto set_json(std::span<const int64_t> set) -> Json
    {
        vector<int64_t> sorted(set.begin(), set.end());
        std::sort(sorted.begin(), sorted.end());
        return Json(sorted);
    }

    auto parse_set(const Json & j) -> vector<int64_t>
    {
        auto out = int_list(j, "set member");
        std::sort(out.begin(), out.end());
        if (std::adjacent_find(out.begin(), out.end()) != out.end())
            bad("set has repeated members");
        return out;
    }

    auto equation_json(const Equation & eq) -> Json
    {
        return Json(vector<int64_t>(eq.coefficients().begin(), eq.coefficients().end()));
    }

    auto parse_equation(const Json & j) -> Equation
    {
        return Equation::validate(int_list(j, "coefficient"));
    }

    auto ordering_json(const ColourOrdering & c) -> Json
    {
        return Json(vector<int64_t>(c.values().begin(), c.values().end()));
    }

    auto parse_ordering(const Json & j) -> ColourOrdering
    {
        return ColourOrdering::validate(int_list(j, "ordering value"));
    }

    auto count_json(const BigCount & c) -> Json
    {
        if (c >= 0 && c <= BigCount{~std::uint64_t{0}})
            return Json(static_cast<std::uint64_t>(c));
        return Json(c.str());
    }

    auto genus_json(const GenusResult & g) -> Json
    {
        Json parts = Json::array();
        for (auto & p : g.witness.parts)
            parts.push_back(p);
        return Json{{"genus", g.genus}, {"parts", std::move(parts)}};
    }

    auto cycle_equation_json(const CycleEquation & ce) -> Json
    {
        return Json{{"cycle", vertices_json(ce.cycle)}, {"edge_ids", ce.edge_ids}, {"equation", equation_json(ce.eq)}};
    }

    auto witness_json(const CombinationWitness & w) -> Json
    {
        Json cycles = Json::array();
        for (auto & c : w.cycles)
            cycles.push_back(vertices_json(c));
        return Json{{"cycles", std::move(cycles)}, {"multipliers", w.multipliers}, {"edge_ids", w.edge_ids},
            {"equation", equation_json(w.eq)}, {"genus_one", w.genus_one}, {"convex", w.convex}};
    }

    auto symmetry_json(const SymmetryVerdict & s) -> Json
    {
        Json out{{"all_symmetric", s.all_symmetric}};
        if (s.levels)
            out["levels"] = *s.levels;
        if (s.witness)
            out["wrapped_cycle"] = cycle_equation_json(*s.witness);
        return out;
    }

    auto classification_json(const CycleClassification & c) -> Json
    {
        Json out{{"abundant", c.abundant}, {"order", vertices_json(c.order)}};
        if (c.abundant) {
            out["i"] = c.i;
            out["j"] = c.j;
            if (c.certificate)
                out["certificate"] = certificate_json(*c.certificate);
        }
        else {
            if (c.ordering)
                out["ordering"] = ordering_json(*c.ordering);
            if (c.convex_witness)
                out["convex_witness"] = cycle_equation_json(*c.convex_witness);
        }
        return out;
    }

    auto verdict_json(const ColouringVerdict & v) -> Json
    {
        Json out{{"class", v.index}, {"colouring", vertices_json(v.colouring)}, {"orbit_size", v.orbit_size}, {"holds", v.holds},
            {"verdict", v.verdict}};
        if (! v.orderings.empty()) {
            Json witnesses = Json::array();
            for (auto & o : v.orderings) {
                Json entry{{"ordering", ordering_json(o.ordering)}};
                if (o.genus_one)
                    entry["witness"] = witness_json(*o.genus_one);
                else if (o.convex)
                    entry["witness"] = cycle_equation_json(*o.convex);
                else
                    entry["witness"] = nullptr;
                witnesses.push_back(std::move(entry));
            }
            out["witness"] = std::move(witnesses);
        }
        else if (v.symmetry)
            out["witness"] = symmetry_json(*v.symmetry);
        else if (v.cycle)
            out["witness"] = classification_json(*v.cycle);
        return out;
    }

    auto summary_json(const CheckAllSummary & s) -> Json
    {
        return Json{{"summary", true}, {"classes", s.classes}, {"colourings", s.colourings}, {"holding", s.holding},
            {"failing", s.failing}, {"symmetry_reduction", s.symmetry_reduction}};
    }

    auto verify_json(const VerifyResult & r) -> Json
    {
        Json out{{"accepted", r.accepted}, {"root_matched_by_canonical_form", r.root_matched_by_canonical_form}};
        if (r.failure)
            out["failure"] = Json{{"node", r.failure->node}, {"condition", r.failure->condition}};
        return out;
    }

    auto behrend_json(const BehrendSet & b) -> Json
    {
        return Json{{"N", b.n}, {"size", b.members.size()}, {"d", b.d}, {"k", b.k}, {"r", b.r}, {"from_baseline", b.from_baseline},
            {"members", b.members}};
    }

    auto rs_json(const RSGraph & rs) -> Json
    {
        Json copies = Json::array();
        for (auto & c : rs.packing)
            copies.push_back(Json{{"x", c.x}, {"a", c.a}, {"vertices", vertices_json(c.vertices)}});
        return Json{{"pattern", graph_json(rs.pattern)}, {"ordering", ordering_json(rs.ordering)}, {"N", rs.n}, {"set", rs.set},
            {"part_size", rs.part_size}, {"graph", graph_json(rs.graph)}, {"parts", vertices_json(rs.parts)},
            {"packing", std::move(copies)}, {"dropped", rs.dropped}};
    }

    auto distinct_json(const DistinctSolveResult & r) -> Json
    {
        Json out{{"mode", to_string(r.mode)}};
        out["assignment"] = r.assignment ? Json(*r.assignment) : Json(nullptr);
        out["split"] = Json{{"x_indices", r.split.x_indices}, {"y_indices", r.split.y_indices}, {"a", r.split.a}, {"b", r.split.b}};
        out["s"] = r.s;
        out["t"] = r.t;
        out["set_size"] = r.set_size;
        out["c_proof"] = r.c_proof;
        out["vertex_bound"] = r.vertex_bound;
        out["vertices"] = r.vertices;
        out["paths"] = r.paths;
        out["surviving_paths"] = r.surviving_paths;
        out["degree_bound"] = r.degree_bound;
        out["degree_needed"] = r.degree_needed;
        out["guarantee"] = r.guarantee;
        out["threshold_proof"] = r.threshold_proof;
        out["threshold_layers"] = r.threshold_layers;
        out["search_nodes"] = r.search_nodes;
        return out;
    }

    auto packing_json(const FCopyPacking & p) -> Json
    {
        Json out = Json::array();
        for (auto & c : p)
            out.push_back(vertices_json(c));
        return out;
    }

    auto parse_packing(const Json & j) -> FCopyPacking
    {
        if (! j.is_array())
            bad("packing must be an array of copies");
        FCopyPacking out;
        for (auto & c : j)
            out.push_back(index_list(c, "copy vertex"));
        return out;
    }

    auto uniform_check_json(const UniformFarCheck & c) -> Json
    {
        Json out{{"accepted", c.accepted}};
        if (! c.accepted) {
            out["condition"] = c.condition;
            if (c.vertex)
                out["vertex"] = *c.vertex;
            if (c.copy)
                out["copy"] = *c.copy;
        }
        return out;
    }

    auto uniformize_json(const UniformizeResult & r) -> Json
    {
        return Json{{"eps_prime", r.eps_prime}, {"attempts", r.attempts}, {"aligned", r.aligned}, {"kept", r.kept},
            {"order", r.subgraph.n()}, {"subgraph", graph_json(r.subgraph)}, {"original", vertices_json(r.original)},
            {"parts", vertices_json(r.witness.parts)}, {"copies", packing_json(r.witness.copies)}};
    }

    auto dense_core_json(const DenseCoreReport & r) -> Json
    {
        auto steps = [](const vector<CoreIteration> & s) {
            Json out = Json::array();
            for (auto & it : s)
                out.push_back(Json{{"size", it.size}, {"mass", it.mass}, {"p", it.p}});
            return out;
        };
        Json yields = Json::array();
        for (auto & y : r.yields)
            yields.push_back(count_json(y));
        Json out{{"n", r.n}, {"delta", r.delta}, {"p", r.p}, {"packing", r.packing}, {"aligned", r.aligned}, {"attempts", r.attempts},
            {"round_bound", r.round_bound}, {"a_rounds", r.a_rounds}, {"b_rounds", r.b_rounds}, {"a_steps", steps(r.a_steps)},
            {"b_steps", steps(r.b_steps)}, {"core_a", vertices_json(r.core_a)}, {"core_b", vertices_json(r.core_b)},
            {"core_mass", r.core_mass}, {"yields", std::move(yields)}, {"total_yield", count_json(r.total_yield)}};
        out["c5"] = r.c5 ? count_json(*r.c5) : Json(nullptr);
        return out;
    }
}
