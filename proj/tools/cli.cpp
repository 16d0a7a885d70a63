#include "cli.hpp"

#include <eqgraph/abundance.hpp>
#include <eqgraph/constructions.hpp>
#include <eqgraph/cycle_equations.hpp>
#include <eqgraph/equations.hpp>
#include <eqgraph/fixtures.hpp>
#include <eqgraph/graph.hpp>
#include <eqgraph/io.hpp>
#include <eqgraph/removal.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>

namespace eqgraph::cli
{
    using std::string;
    using std::vector;

    auto exit_code(ErrorKind kind) -> int
    {
        switch (kind) {
        case ErrorKind::Overflow:
        case ErrorKind::TooManyVariables:
        case ErrorKind::ScaleExceeded:
        case ErrorKind::Truncated:
        case ErrorKind::RetryCapExceeded:
        case ErrorKind::BudgetExhausted:
            return exit_bound;
        case ErrorKind::PackingTooSmall:
        case ErrorKind::NoTriangles:
            return exit_fails;
        default:
            return exit_usage;
        }
    }

    auto build_id() -> string
    {
#ifdef EQGRAPH_VERSION
        return string{"eqgraph "} + EQGRAPH_VERSION + " (" + EQGRAPH_BUILD_TYPE + ")";
#else
        return "eqgraph (unversioned)";
#endif
    }

    namespace
    {
        struct Options
        {
            bool pretty = false;
            bool verbose = false;
            unsigned jobs = 1;
            std::uint64_t seed = 0;
            string output;

            string eq;
            string graph;
            string target;
            string pattern = "k3";
            string set;
            string cert;
            string packing;
            string parts;
            string ordering;
            string list; // walk, solution or blow-up sizes
            string kind;
            string name;
            string check = "genus1";
            string orderings = "identity";
            string mode = "nontrivial";
            bool witness = false;
            bool basis = false;
            bool no_symmetry = false;
            bool search = false;
            bool proper = false;
            std::int64_t n = 0;
            std::size_t m = 0;
            std::size_t t = 2;
            std::int64_t L = 2;
            std::size_t max_count = default_max_cycles;
            std::size_t max_len = default_max_cycle_length;
            std::uint64_t budget = 0;
            std::size_t retry_cap = default_retry_cap;
            double eps = 0.01;
            double delta = 0.01;
        };

        auto emit(std::ostream & o, const Json & j, bool pretty) -> void
        {
            o << dump(j, pretty) << '\n';
        }


        auto load_coloured(const string & path) -> ColouredGraph
        {
            return parse_coloured(read_json_file(path));
        }

        // Inline values can be longer than a path may be; those are simply not files.
        auto is_file(const string & spec) -> bool
        {
            std::error_code ec;
            return std::filesystem::is_regular_file(spec, ec);
        }

        auto lower(string s) -> string
        {
            std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
            return s;
        }

        // k<n>, c<n>, p<n>, petersen, or a graph file.
        auto load_pattern(const string & spec) -> Graph
        {
            auto s = lower(spec);
            if (s == "petersen")
                return Graph::petersen();
            if (s.size() >= 2 && (s[0] == 'k' || s[0] == 'c' || s[0] == 'p')
                && std::all_of(s.begin() + 1, s.end(), [](unsigned char ch) { return std::isdigit(ch); })) {
                auto n = std::stoul(s.substr(1));
                if (n == 0 || n > 64)
                    throw Error(ErrorKind::InvalidInput, "pattern size out of range: " + spec);
                if (s[0] == 'k')
                    return Graph::complete(n);
                if (s[0] == 'c')
                    return Graph::cycle(n);
                return Graph::path(n);
            }
            if (! is_file(spec))
                throw Error(ErrorKind::InvalidInput, "unknown pattern " + spec);
            return parse_host(read_json_file(spec));
        }

        // A graph file, or one of the names above (and fig5) when no such file exists.
        auto load_graph(const string & spec) -> Graph
        {
            if (is_file(spec))
                return parse_host(read_json_file(spec));
            if (lower(spec) == "fig5")
                return fig5_graph();
            return load_pattern(spec);
        }

        // Inline JSON array, comma list, or file.
        auto load_set(const string & spec) -> vector<std::int64_t>
        {
            if (! spec.empty() && spec.front() == '[')
                return parse_set(parse_json_text(spec));
            if (is_file(spec))
                return parse_set(read_json_file(spec));
            auto values = parse_coefficient_list(spec);
            return parse_set(Json(values));
        }

        auto load_ordering(const string & spec, std::size_t pattern_size) -> ColourOrdering
        {
            if (spec.empty())
                return ColourOrdering::identity(pattern_size);
            auto c = ColourOrdering::validate(parse_coefficient_list(spec));
            if (c.size() != pattern_size)
                throw Error(ErrorKind::LengthMismatch, "ordering has " + std::to_string(c.size()) + " values, pattern has "
                    + std::to_string(pattern_size) + " vertices");
            return c;
        }

        auto to_vertices(const vector<std::int64_t> & xs) -> vector<Vertex>
        {
            vector<Vertex> out;
            for (auto x : xs) {
                if (x < 0)
                    throw Error(ErrorKind::InvalidInput, "negative vertex " + std::to_string(x));
                out.push_back(static_cast<Vertex>(x));
            }
            return out;
        }

        auto hom_name(HomOutcome o) -> string
        {
            switch (o) {
            case HomOutcome::Found: return "found";
            case HomOutcome::NotFound: return "not-found";
            case HomOutcome::BudgetExhausted: return "budget-exhausted";
            }
            return "?";
        }

        auto colouring_string(const vector<Vertex> & colouring) -> string
        {
            string s;
            for (auto c : colouring)
                s += static_cast<char>('1' + c);
            return s;
        }

        using Action = std::function<int(std::ostream &)>;

        struct Tree
        {
            Options & o;
            std::optional<Action> & action;

            auto leaf(CLI::App * parent, const string & name, const string & description, Action fn) -> CLI::App *
            {
                auto sub = parent->add_subcommand(name, description);
                sub->callback([this, fn] { action = fn; });
                return sub;
            }

            auto add_eq(CLI::App & app) -> void
            {
                auto eq = app.add_subcommand("eq", "translation-invariant equations");
                eq->require_subcommand(1);

                auto genus_cmd = leaf(eq, "genus", "largest zero-sum partition", [this](std::ostream & out) {
                    auto g = genus(Equation::validate(parse_coefficient_list(o.eq)));
                    if (o.witness)
                        emit(out, genus_json(g), o.pretty);
                    else
                        out << g.genus << '\n';
                    return exit_ok;
                });
                genus_cmd->add_option("coefficients", o.eq, "comma-separated, e.g. 2,2,2,-3,-3")->required();
                genus_cmd->add_flag("--witness", o.witness, "print the partition as JSON");

                auto classify = leaf(eq, "classify", "genus, convexity and symmetry", [this](std::ostream & out) {
                    auto e = Equation::validate(parse_coefficient_list(o.eq));
                    auto g = genus(e);
                    Json j{{"equation", equation_json(e)}, {"genus", g.genus}, {"genus_one", g.genus == 1},
                        {"convex", is_convex(e)}, {"symmetric", is_symmetric(e)}, {"partition", genus_json(g)}};
                    emit(out, j, o.pretty);
                    return exit_ok;
                });
                classify->add_option("coefficients", o.eq)->required();

                auto solution = leaf(eq, "solution", "classify an assignment", [this](std::ostream & out) {
                    auto e = Equation::validate(parse_coefficient_list(o.eq));
                    auto x = parse_coefficient_list(o.list);
                    auto c = classify_solution(e, x);
                    emit(out, Json{{"class", string{to_string(c)}}}, o.pretty);
                    return c == SolutionClass::NotASolution ? exit_fails : exit_ok;
                });
                solution->add_option("coefficients", o.eq)->required();
                solution->add_option("--x", o.list, "values, comma-separated")->required();

                auto avoid = leaf(eq, "avoid", "largest avoiding subset of [1, n] by exhaustive search", [this](std::ostream & out) {
                    auto e = Equation::validate(parse_coefficient_list(o.eq));
                    auto mode = o.mode == "distinct" ? AvoidanceMode::DistinctFree : AvoidanceMode::NontrivialFree;
                    auto r = brute_avoidance(e, o.n, mode, o.jobs);
                    emit(out, Json{{"n", o.n}, {"mode", string{to_string(mode)}}, {"size", r.n_max}, {"set", set_json(r.witness)}},
                        o.pretty);
                    return exit_ok;
                });
                avoid->add_option("coefficients", o.eq)->required();
                avoid->add_option("--n", o.n)->required()->check(CLI::Range(std::int64_t{1}, max_avoidance_n));
                avoid->add_option("--mode", o.mode, "nontrivial or distinct")->check(CLI::IsMember({"nontrivial", "distinct"}));

                auto count = leaf(eq, "count-distinct", "ordered all-distinct solutions inside a set", [this](std::ostream & out) {
                    auto e = Equation::validate(parse_coefficient_list(o.eq));
                    auto a = load_set(o.set);
                    emit(out, Json{{"count", count_distinct_solutions(e, a)}}, o.pretty);
                    return exit_ok;
                });
                count->add_option("coefficients", o.eq)->required();
                count->add_option("--set", o.set, "JSON file, JSON array or comma list")->required();
            }

            auto add_graph(CLI::App & app) -> void
            {
                auto g = app.add_subcommand("graph", "graphs, homomorphisms and cycles");
                g->require_subcommand(1);

                auto cycles = leaf(g, "cycles", "enumerate simple cycles", [this](std::ostream & out) {
                    auto list = enumerate_cycles(load_graph(o.graph), o.max_count, o.max_len);
                    emit(out, Json{{"count", list.cycles.size()}, {"truncated_by_count", list.truncated_by_count},
                        {"truncated_by_length", list.truncated_by_length}, {"cycles", list.cycles}}, o.pretty);
                    return list.truncated() ? exit_bound : exit_ok;
                });
                cycles->add_option("--graph", o.graph)->required();
                cycles->add_option("--max-count", o.max_count)->check(CLI::PositiveNumber);
                cycles->add_option("--max-len", o.max_len)->check(CLI::Range(std::size_t{3}, std::size_t{1} << 20));

                auto basis = leaf(g, "basis", "fundamental cycles of a spanning forest", [this](std::ostream & out) {
                    auto b = cycle_basis(load_graph(o.graph));
                    emit(out, Json{{"size", b.size()}, {"cycles", b}}, o.pretty);
                    return exit_ok;
                });
                basis->add_option("--graph", o.graph)->required();

                auto hom = leaf(g, "hom", "homomorphism search", [this](std::ostream & out) {
                    auto r = hom_exists(load_graph(o.graph), load_pattern(o.target), o.budget ? o.budget : default_hom_budget);
                    Json j{{"outcome", hom_name(r.outcome)}, {"nodes", r.nodes}};
                    if (r.outcome == HomOutcome::Found)
                        j["mapping"] = r.mapping;
                    emit(out, j, o.pretty);
                    return r.outcome == HomOutcome::Found ? exit_ok : r.outcome == HomOutcome::NotFound ? exit_fails : exit_bound;
                });
                hom->add_option("--graph", o.graph)->required();
                hom->add_option("--target", o.target, "k<n>, c<n>, p<n>, petersen or a graph file")->required();
                hom->add_option("--budget", o.budget, "search nodes")->check(CLI::PositiveNumber);

                auto levels = leaf(g, "levels", "colour homomorphism to the cyclically coloured infinite path",
                    [this](std::ostream & out) {
                        auto lm = colour_hom_to_P3inf(load_coloured(o.graph));
                        Json j{{"maps", lm.levels.has_value()}};
                        if (lm.levels)
                            j["levels"] = *lm.levels;
                        if (lm.wrapped_cycle)
                            j["wrapped_cycle"] = *lm.wrapped_cycle;
                        emit(out, j, o.pretty);
                        return lm.levels ? exit_ok : exit_fails;
                    });
                levels->add_option("--graph", o.graph, "K3-coloured graph")->required();

                auto wrap_cmd = leaf(g, "wrap", "wrap of a walk (repeat the first vertex to close it)", [this](std::ostream & out) {
                    auto walk = to_vertices(parse_coefficient_list(o.list));
                    emit(out, Json{{"wrap", wrap(load_coloured(o.graph), walk)}}, o.pretty);
                    return exit_ok;
                });
                wrap_cmd->add_option("--graph", o.graph)->required();
                wrap_cmd->add_option("--walk", o.list, "vertices, comma-separated")->required();

                auto blow = leaf(g, "blowup", "replace each vertex by an independent set", [this](std::ostream & out) {
                    auto raw = parse_coefficient_list(o.list);
                    vector<std::size_t> sizes;
                    for (auto s : raw) {
                        if (s < 0)
                            throw Error(ErrorKind::InvalidInput, "negative size");
                        sizes.push_back(static_cast<std::size_t>(s));
                    }
                    emit(out, coloured_json(blow_up(load_coloured(o.graph), sizes)), o.pretty);
                    return exit_ok;
                });
                blow->add_option("--graph", o.graph)->required();
                blow->add_option("--sizes", o.list)->required();
            }

            auto add_cyceq(CLI::App & app) -> void
            {
                auto c = app.add_subcommand("cyceq", "cycle-equations of F-coloured graphs");
                c->require_subcommand(1);

                auto bounds = [this](CLI::App * sub) {
                    sub->add_option("--max-count", o.max_count, "cycle enumeration cap")->check(CLI::PositiveNumber);
                    sub->add_option("--max-len", o.max_len, "longest cycle enumerated")->check(CLI::Range(std::size_t{3}, std::size_t{1} << 20));
                };

                auto system = leaf(c, "system", "all cycle-equations (or a basis)", [this](std::ostream & out) {
                    auto g = load_coloured(o.graph);
                    auto s = build_system(g, load_ordering(o.ordering, g.pattern.n()), o.basis, o.max_count, o.max_len);
                    Json eqs = Json::array();
                    for (auto & ce : s.equations)
                        eqs.push_back(cycle_equation_json(ce));
                    emit(out, Json{{"all_cycles", s.all_cycles}, {"truncated", s.truncated}, {"equations", std::move(eqs)}}, o.pretty);
                    return s.truncated ? exit_bound : exit_ok;
                });
                system->add_option("--graph", o.graph, "coloured graph")->required();
                system->add_option("--ordering", o.ordering, "c values, default 1..|F|");
                system->add_flag("--basis", o.basis, "fundamental cycles only");
                bounds(system);

                auto convex = leaf(c, "convex", "is some combination of the cycle-equations convex", [this](std::ostream & out) {
                    auto g = load_coloured(o.graph);
                    auto w = exists_convex_combination(g, load_ordering(o.ordering, g.pattern.n()), o.max_count);
                    emit(out, Json{{"convex", w.has_value()}, {"witness", w ? cycle_equation_json(*w) : Json(nullptr)}}, o.pretty);
                    return w ? exit_ok : exit_fails;
                });
                convex->add_option("--graph", o.graph)->required();
                convex->add_option("--ordering", o.ordering);
                convex->add_option("--max-count", o.max_count)->check(CLI::PositiveNumber);

                auto symmetric = leaf(c, "symmetric", "are all cycle-equations symmetric (K3 only)", [this](std::ostream & out) {
                    auto v = eqs_all_symmetric(load_coloured(o.graph));
                    emit(out, symmetry_json(v), o.pretty);
                    return v.all_symmetric ? exit_ok : exit_fails;
                });
                symmetric->add_option("--graph", o.graph)->required();

                auto classify = leaf(c, "classify", "abundance of a coloured cycle", [this](std::ostream & out) {
                    emit(out, classification_json(classify_cycle(load_coloured(o.graph))), o.pretty);
                    return exit_ok;
                });
                classify->add_option("--graph", o.graph)->required();

                auto genus1 = leaf(c, "genus1", "bounded search for a genus-one combination", [this](std::ostream & out) {
                    auto g = load_coloured(o.graph);
                    SearchBounds b{o.t, o.L, o.max_count, o.max_len};
                    auto w = genus_one_combination_search(g, load_ordering(o.ordering, g.pattern.n()), b);
                    emit(out, Json{{"found", w.has_value()}, {"witness", w ? witness_json(*w) : Json(nullptr)}}, o.pretty);
                    return w ? exit_ok : exit_fails;
                });
                genus1->add_option("--graph", o.graph)->required();
                genus1->add_option("--ordering", o.ordering);
                genus1->add_option("--t", o.t, "cycles per combination")->check(CLI::Range(std::size_t{1}, std::size_t{6}));
                genus1->add_option("--L", o.L, "largest |multiplier|")->check(CLI::Range(std::int64_t{1}, std::int64_t{50}));
                bounds(genus1);

                auto all = leaf(c, "check-all", "run a check on every proper 3-colouring", [this](std::ostream & out) {
                    auto g = load_graph(o.graph);
                    CheckAllOptions opts;
                    opts.check = parse_colouring_check(o.check);
                    opts.bounds = SearchBounds{o.t, o.L, o.max_count, o.max_len};
                    opts.all_orderings = o.orderings == "all";
                    opts.symmetry_reduction = ! o.no_symmetry;
                    opts.jobs = o.jobs;
                    if (o.pretty)
                        out << std::left << std::setw(7) << "class" << std::setw(g.n() + 2) << "colouring" << std::setw(7) << "orbit"
                            << "verdict\n";
                    auto summary = check_all_colourings(g, opts, [&](const ColouringVerdict & v) {
                        if (o.pretty)
                            out << std::left << std::setw(7) << v.index << std::setw(g.n() + 2) << colouring_string(v.colouring)
                                << std::setw(7) << v.orbit_size << v.verdict << '\n';
                        else
                            emit(out, verdict_json(v), false);
                        out.flush();
                        if (o.verbose && ! v.holds)
                            err() << "class " << v.index << ": " << v.verdict << '\n';
                    });
                    if (o.pretty)
                        out << summary.holding << " of " << summary.classes << " classes hold (" << summary.colourings
                            << " colourings)\n";
                    else
                        emit(out, summary_json(summary), false);
                    return exit_ok;
                });
                all->add_option("--graph", o.graph)->required();
                all->add_option("--check", o.check, "genus1, convex, symmetric or cycle")
                    ->check(CLI::IsMember({"genus1", "convex", "symmetric", "cycle"}));
                all->add_option("--t", o.t)->check(CLI::Range(std::size_t{1}, std::size_t{6}));
                all->add_option("--L", o.L)->check(CLI::Range(std::int64_t{1}, std::int64_t{50}));
                all->add_option("--orderings", o.orderings, "identity or all")->check(CLI::IsMember({"identity", "all"}));
                all->add_flag("--no-symmetry-reduction", o.no_symmetry);
                bounds(all);
            }

            auto add_abundance(CLI::App & app) -> void
            {
                auto a = app.add_subcommand("abundance", "abundance certificates");
                a->require_subcommand(1);

                auto verify = leaf(a, "verify", "check a certificate node by node", [this](std::ostream & out) {
                    auto r = verify_certificate(parse_certificate(read_json_file(o.cert)));
                    emit(out, verify_json(r), o.pretty);
                    if (! r.accepted && r.failure)
                        err() << "rejected at node " << r.failure->node << ": " << r.failure->condition << '\n';
                    return r.accepted ? exit_ok : exit_fails;
                });
                verify->add_option("--cert", o.cert)->required();

                auto split = leaf(a, "split", "certificate from recursive two-colour cuts", [this](std::ostream & out) {
                    auto r = splittable_decompose(load_coloured(o.graph), o.budget ? o.budget : default_split_budget);
                    if (! r) {
                        emit(out, Json{{"splittable", false}}, o.pretty);
                        return exit_fails;
                    }
                    emit(out, Json{{"splittable", true}, {"joins", r->joins}, {"certificate", certificate_json(r->certificate)}},
                        o.pretty);
                    return exit_ok;
                });
                split->add_option("--graph", o.graph)->required();
                split->add_option("--budget", o.budget, "cut attempts")->check(CLI::PositiveNumber);

                auto peel = leaf(a, "peel", "certificate from repeated peeling", [this](std::ostream & out) {
                    auto r = peel_order_search(load_coloured(o.graph));
                    if (! r) {
                        emit(out, Json{{"peelable", false}}, o.pretty);
                        return exit_fails;
                    }
                    emit(out, Json{{"peelable", true}, {"removal_order", r->removal_order}, {"atom", r->atom_vertices},
                        {"certificate", certificate_json(r->certificate)}}, o.pretty);
                    return exit_ok;
                });
                peel->add_option("--graph", o.graph)->required();

                auto hm = leaf(a, "hm", "iterated doubling H^m from the bijective seed", [this](std::ostream & out) {
                    auto pattern = load_pattern(o.pattern);
                    auto seed = bijective_seed(pattern);
                    auto k2 = Graph::complete(2);
                    auto report = [&](std::size_t m, const ColouredGraph & h) {
                        auto r = hom_exists(h.host, k2);
                        if (r.outcome == HomOutcome::BudgetExhausted)
                            throw Error(ErrorKind::BudgetExhausted, "homomorphism search to K2 at m = " + std::to_string(m));
                        return Json{{"m", m}, {"vertices", h.host.n()}, {"edges", h.host.edge_count()},
                            {"hom_to_k2", r.outcome == HomOutcome::Found}};
                    };
                    if (o.search) {
                        Json steps = Json::array();
                        std::optional<std::size_t> first;
                        for (std::size_t m = 0; m <= o.m && ! first; ++m) {
                            auto row = report(m, build_Hm(seed, m));
                            if (! row["hom_to_k2"].get<bool>())
                                first = m;
                            steps.push_back(std::move(row));
                        }
                        emit(out, Json{{"smallest_m", first ? Json(*first) : Json(nullptr)}, {"steps", std::move(steps)}}, o.pretty);
                        return first ? exit_ok : exit_fails;
                    }
                    auto h = build_Hm(seed, o.m);
                    auto row = report(o.m, h);
                    row["graph"] = coloured_json(h);
                    emit(out, row, o.pretty);
                    return exit_ok;
                });
                hm->add_option("--pattern", o.pattern);
                hm->add_option("--m", o.m)->required()->check(CLI::Range(std::size_t{0}, std::size_t{40}));
                hm->add_flag("--search", o.search, "report the smallest m <= --m with no homomorphism to K2");

                auto fixture = leaf(a, "fixture", "emit a shipped certificate (fig1 or fig2)", [this](std::ostream & out) {
                    auto cert = o.name == "fig1" ? fig1_c5_certificate() : fig2_petersen_certificate();
                    emit(out, certificate_json(cert), o.pretty);
                    return exit_ok;
                });
                fixture->add_option("--name", o.name)->required()->check(CLI::IsMember({"fig1", "fig2"}));

                auto canon = leaf(a, "canonical", "canonical form of a coloured graph", [this](std::ostream & out) {
                    emit(out, raw_json(canonical_form(load_coloured(o.graph), o.budget ? o.budget : default_canonical_budget)),
                        o.pretty);
                    return exit_ok;
                });
                canon->add_option("--graph", o.graph)->required();
                canon->add_option("--budget", o.budget)->check(CLI::PositiveNumber);
            }

            auto add_construct(CLI::App & app) -> void
            {
                auto c = app.add_subcommand("construct", "named constructions");
                c->require_subcommand(1);

                auto behrend = leaf(c, "behrend", "progression-free subset of [1, n]", [this](std::ostream & out) {
                    emit(out, behrend_json(behrend_set(o.n)), o.pretty);
                    return exit_ok;
                });
                behrend->add_option("--n", o.n)->required()->check(CLI::Range(std::int64_t{1}, max_behrend_n));

                auto rs = leaf(c, "rs", "Ruzsa-Szemeredi difference graph", [this](std::ostream & out) {
                    auto pattern = load_pattern(o.pattern);
                    auto a = load_set(o.set);
                    emit(out, rs_json(rs_graph(pattern, load_ordering(o.ordering, pattern.n()), o.n, a)), o.pretty);
                    return exit_ok;
                });
                rs->add_option("--pattern", o.pattern);
                rs->add_option("--N", o.n)->required()->check(CLI::Range(std::int64_t{1}, max_rs_part));
                rs->add_option("--set", o.set)->required();
                rs->add_option("--ordering", o.ordering);

                leaf(c, "fig5", "the 15-vertex triangle-free subgraph of G3", [this](std::ostream & out) {
                    emit(out, graph_json(fig5_graph()), o.pretty);
                    return exit_ok;
                });

                auto gn = leaf(c, "gn", "the graph G_n on a ground set of size n", [this](std::ostream & out) {
                    auto n = static_cast<unsigned>(o.n);
                    emit(out, Json{{"graph", graph_json(g_n(n))}, {"parts", g_n_parts(n, o.proper)}}, o.pretty);
                    return exit_ok;
                });
                gn->add_option("--n", o.n)->required()->check(CLI::Range(1, static_cast<int>(max_g_n)));
                gn->add_flag("--proper", o.proper, "parts labelling for proper subsets only");
            }

            auto add_solve(CLI::App & app) -> void
            {
                auto s = app.add_subcommand("solve", "solutions inside sets");
                s->require_subcommand(1);

                auto distinct = leaf(s, "distinct", "all-distinct solution of a genus >= 2 equation", [this](std::ostream & out) {
                    auto e = Equation::validate(parse_coefficient_list(o.eq));
                    auto a = load_set(o.set);
                    auto r = find_distinct_solution(e, a, o.n, o.budget ? o.budget : 1'000'000);
                    emit(out, distinct_json(r), o.pretty);
                    return r.assignment ? exit_ok : exit_bound;
                });
                distinct->add_option("--eq", o.eq)->required();
                distinct->add_option("--set", o.set)->required();
                distinct->add_option("--N", o.n)->required()->check(CLI::PositiveNumber);
                distinct->add_option("--budget", o.budget, "search nodes below the guarantee")->check(CLI::PositiveNumber);
            }

            auto add_removal(CLI::App & app) -> void
            {
                auto r = app.add_subcommand("removal", "packings, uniformization and the dense core");
                r->require_subcommand(1);

                auto load_parts = [this]() -> std::optional<vector<Vertex>> {
                    if (o.parts.empty())
                        return std::nullopt;
                    auto j = is_file(o.parts) ? read_json_file(o.parts) : parse_json_text(o.parts);
                    if (! j.is_array())
                        throw Error(ErrorKind::InvalidInput, "parts must be an array");
                    return j.get<vector<Vertex>>();
                };

                auto pack = leaf(r, "pack", "greedy edge-disjoint packing of pattern copies", [this, load_parts](std::ostream & out) {
                    auto g = load_graph(o.graph);
                    auto f = load_pattern(o.pattern);
                    auto parts = load_parts();
                    auto p = greedy_packing(g, f, parts ? &*parts : nullptr);
                    emit(out, Json{{"size", p.size()}, {"copies", packing_json(p)}}, o.pretty);
                    return exit_ok;
                });
                pack->add_option("--graph", o.graph)->required();
                pack->add_option("--pattern", o.pattern);
                pack->add_option("--parts", o.parts, "JSON array or file: only copies aligned with it");

                auto uni = leaf(r, "uniformize", "pass to a uniformly far subgraph", [this](std::ostream & out) {
                    auto g = load_graph(o.graph);
                    auto f = load_pattern(o.pattern);
                    auto packing = o.packing.empty() ? greedy_packing(g, f) : parse_packing(read_json_file(o.packing));
                    if (auto problem = check_packing(g, f, packing))
                        throw Error(ErrorKind::InvalidInput, "packing: " + *problem);
                    auto res = uniformize(g, f, packing, o.eps, o.seed, o.retry_cap);
                    auto check = verify_uniform_far(res.subgraph, f, res.witness);
                    auto j = uniformize_json(res);
                    j["check"] = uniform_check_json(check);
                    emit(out, j, o.pretty);
                    return check.accepted ? exit_ok : exit_fails;
                });
                uni->add_option("--graph", o.graph)->required();
                uni->add_option("--pattern", o.pattern);
                uni->add_option("--packing", o.packing, "packing file; default greedy");
                uni->add_option("--eps", o.eps)->check(CLI::Range(1e-9, 1.0));
                uni->add_option("--retry-cap", o.retry_cap)->check(CLI::PositiveNumber);

                auto c5 = leaf(r, "count-c5", "exact number of 5-cycles", [this](std::ostream & out) {
                    emit(out, Json{{"c5", count_json(count_c5(load_graph(o.graph)))}}, o.pretty);
                    return exit_ok;
                });
                c5->add_option("--graph", o.graph)->required();

                auto p4 = leaf(r, "count-p4", "aligned paths x1 x2 x3 x4 over parts 0, 1, 2, 0", [this, load_parts](std::ostream & out) {
                    auto g = load_graph(o.graph);
                    auto parts = load_parts();
                    if (! parts)
                        throw Error(ErrorKind::InvalidInput, "--parts is required");
                    emit(out, Json{{"p4", count_json(count_p4_aligned(g, *parts))}}, o.pretty);
                    return exit_ok;
                });
                p4->add_option("--graph", o.graph)->required();
                p4->add_option("--parts", o.parts)->required();

                auto core = leaf(r, "dense-core", "A- and B-side refinement towards many 5-cycles", [this](std::ostream & out) {
                    auto rep = dense_core_c5(load_graph(o.graph), o.delta, o.seed, o.retry_cap);
                    emit(out, dense_core_json(rep), o.pretty);
                    return exit_ok;
                });
                core->add_option("--graph", o.graph)->required();
                core->add_option("--delta", o.delta)->check(CLI::Range(1e-9, 0.999999));
                core->add_option("--retry-cap", o.retry_cap)->check(CLI::PositiveNumber);
            }

            auto add_format(CLI::App & app) -> void
            {
                auto f = leaf(&app, "format", "parse a document and write it back", [this](std::ostream & out) {
                    auto j = read_json_file(o.graph);
                    Json back;
                    if (o.kind == "graph")
                        back = graph_json(parse_graph(j));
                    else if (o.kind == "coloured")
                        back = coloured_json(parse_coloured(j));
                    else if (o.kind == "certificate")
                        back = certificate_json(parse_certificate(j));
                    else if (o.kind == "set")
                        back = set_json(parse_set(j));
                    else if (o.kind == "equation")
                        back = equation_json(parse_equation(j));
                    else if (o.kind == "ordering")
                        back = ordering_json(parse_ordering(j));
                    else
                        back = packing_json(parse_packing(j));
                    emit(out, back, o.pretty);
                    return exit_ok;
                });
                f->add_option("--kind", o.kind)
                    ->required()
                    ->check(CLI::IsMember({"graph", "coloured", "certificate", "set", "equation", "ordering", "packing"}));
                f->add_option("--in", o.graph)->required();
            }

            std::ostream * err_stream = nullptr;
            auto err() -> std::ostream & { return *err_stream; }
        };
    }

    auto run(const vector<string> & args, std::ostream & out, std::ostream & err) -> int
    {
        Options o;
        std::optional<Action> action;
        Tree tree{o, action};
        tree.err_stream = &err;

        CLI::App app{"Translation-invariant equations, coloured graphs and abundance certificates", "eqgraph"};
        app.set_version_flag("--version", build_id());
        app.require_subcommand(1);
        app.fallthrough();
        app.add_flag("--pretty", o.pretty, "indented JSON and human tables");
        app.add_flag("-v,--verbose", o.verbose, "extra diagnostics on standard error");
        app.add_option("--jobs", o.jobs, "worker threads; output order does not depend on it")->check(CLI::Range(1u, 256u));
        app.add_option("--seed", o.seed, "seed for randomized steps (default 0)");
        app.add_option("-o,--output", o.output, "write data here instead of standard output");

        tree.add_eq(app);
        tree.add_graph(app);
        tree.add_cyceq(app);
        tree.add_abundance(app);
        tree.add_construct(app);
        tree.add_solve(app);
        tree.add_removal(app);
        tree.add_format(app);

        try {
            vector<string> reversed(args.rbegin(), args.rend());
            app.parse(reversed);
        }
        catch (const CLI::ParseError & e) {
            auto code = app.exit(e, out, err);
            return code == 0 ? exit_ok : exit_usage;
        }
        if (! action) {
            err << app.help();
            return exit_usage;
        }

        try {
            if (o.output.empty())
                return (*action)(out);
            std::ostringstream buffer;
            auto code = (*action)(buffer);
            std::ofstream file{o.output, std::ios::binary};
            if (! file)
                throw Error(ErrorKind::InvalidInput, "cannot write " + o.output);
            file << buffer.str();
            return code;
        }
        catch (const Error & e) {
            err << "error: " << e.what() << '\n';
            return exit_code(e.kind());
        }
        catch (const nlohmann::json::exception & e) {
            err << "error: InvalidInput: " << e.what() << '\n';
            return exit_usage;
        }
        catch (const std::exception & e) {
            err << "internal error: " << e.what() << '\n';
            return exit_bound;
        }
    }
}
