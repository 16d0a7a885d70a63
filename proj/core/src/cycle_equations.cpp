#include <eqgraph/cycle_equations.hpp>
#include <eqgraph/error.hpp>

#include <algorithm>
#include <future>
#include <map>
#include <numeric>
#include <unordered_set>

using std::int64_t;
using std::size_t;
using std::vector;

namespace eqgraph
{
    using std::to_string;

    auto build_cycle_equation(std::span<const Vertex> cycle, const ColouredGraph & g, const ColourOrdering & c) -> CycleEquation
    {
        check_cycle(g.host, cycle);
        if (c.size() != g.pattern.n())
            throw Error(ErrorKind::InvalidInput, "ordering size differs from the pattern");
        vector<size_t> edge_ids;
        vector<int64_t> coeffs;
        const size_t len = cycle.size();
        for (size_t i = 0; i < len; ++i) {
            auto v = cycle[i], w = cycle[(i + 1) % len];
            edge_ids.push_back(*g.host.edge_id(v, w));
            coeffs.push_back(c(g.sigma[w]) - c(g.sigma[v]));
        }
        return CycleEquation{{cycle.begin(), cycle.end()}, std::move(edge_ids), Equation::validate(std::move(coeffs))};
    }

    namespace
    {
        auto equations_for(const vector<vector<Vertex>> & cycles, const ColouredGraph & g, const ColourOrdering & c) -> vector<CycleEquation>
        {
            vector<CycleEquation> out;
            out.reserve(cycles.size());
            for (auto & cycle : cycles)
                out.push_back(build_cycle_equation(cycle, g, c));
            return out;
        }
    }

    auto build_system(const ColouredGraph & g, const ColourOrdering & c, bool from_basis, size_t max_count, size_t max_len) -> CycleEquationSystem
    {
        CycleEquationSystem system;
        system.all_cycles = ! from_basis;
        if (from_basis)
            system.equations = equations_for(cycle_basis(g.host), g, c);
        else {
            auto list = enumerate_cycles(g.host, max_count, max_len);
            system.truncated = list.truncated();
            system.equations = equations_for(list.cycles, g, c);
        }
        return system;
    }

    auto exists_convex_combination(const ColouredGraph & g, const ColourOrdering & c, size_t max_count) -> std::optional<CycleEquation>
    {
        if (c.size() != g.pattern.n())
            throw Error(ErrorKind::InvalidInput, "ordering size differs from the pattern");
        auto list = enumerate_cycles(g.host, max_count, std::max<size_t>(3, g.pattern.n()));
        for (auto & cycle : list.cycles) {
            auto ce = build_cycle_equation(cycle, g, c);
            if (is_convex(ce.eq))
                return ce;
        }
        if (list.truncated_by_count)
            throw Error(ErrorKind::Truncated, "cycle enumeration hit its count cap");
        return std::nullopt;
    }

    auto eqs_all_symmetric(const ColouredGraph & g) -> SymmetryVerdict
    {
        auto lm = colour_hom_to_P3inf(g);
        SymmetryVerdict v;
        if (lm.levels) {
            v.all_symmetric = true;
            v.levels = std::move(lm.levels);
            return v;
        }
        v.witness = build_cycle_equation(*lm.wrapped_cycle, g, ColourOrdering::identity(3));
        return v;
    }

    namespace
    {
        auto path_certificate(CertificateBuilder & b, const vector<Vertex> & path, const ColouredGraph & g) -> CertificateBuilder::Ref
        {
            auto node = b.atom({path[0], path[1]}, {g.sigma[path[0]], g.sigma[path[1]]}, {Edge{path[0], path[1]}});
            for (size_t k = 2; k < path.size(); ++k)
                node = b.peel(node, path[k], {path[k - 1]}, g.sigma[path[k]]);
            return node;
        }
    }

    auto classify_cycle(const ColouredGraph & g) -> CycleClassification
    {
        CycleClassification result;
        result.order = cycle_order(g.host);
        const auto & order = result.order;
        const size_t len = order.size();

        for (size_t i = 0; i < len; ++i)
            for (size_t j = i + 2; j < len; ++j) {
                if ((j + 1) % len == i || g.sigma[order[i]] != g.sigma[order[j]])
                    continue;
                result.abundant = true;
                result.i = i;
                result.j = j;

                const Vertex vi = order[i], vj = order[j];
                const Vertex next = order[(i + 1) % len], prev = order[(i + len - 1) % len];
                CertificateBuilder b{g.pattern};
                auto c4 = b.atom({vi, next}, {g.sigma[vi], g.sigma[next]}, {Edge{vi, next}});
                c4 = b.peel(c4, vj, {next}, g.sigma[vj]);
                c4 = b.peel(c4, prev, {vi, vj}, g.sigma[prev]);

                vector<Vertex> p, q; // the two arcs from v_i's neighbours to v_j
                for (size_t k = i + 1;; k = (k + 1) % len) {
                    p.push_back(order[k]);
                    if (k == j)
                        break;
                }
                for (size_t k = (i + len - 1) % len;; k = (k + len - 1) % len) {
                    q.push_back(order[k]);
                    if (k == j)
                        break;
                }
                auto glued = b.glue(c4, next, vj, path_certificate(b, p, g), {next}, {vj});
                glued = b.glue(glued, prev, vj, path_certificate(b, q, g), {prev}, {vj});
                result.certificate = b.finish(glued, g);
                return result;
            }

        // all colours distinct: number them along the cycle
        vector<int64_t> values(g.pattern.n(), 0);
        int64_t next_value = 1;
        for (auto v : order)
            values[g.sigma[v]] = next_value++;
        for (auto & x : values)
            if (x == 0)
                x = next_value++;
        result.ordering = ColourOrdering::validate(values);
        result.convex_witness = build_cycle_equation(order, g, *result.ordering);
        return result;
    }

    namespace
    {
        using Sparse = vector<std::pair<size_t, int64_t>>;

        auto to_sparse(const CycleEquation & ce) -> Sparse
        {
            Sparse s;
            for (size_t i = 0; i < ce.edge_ids.size(); ++i)
                s.emplace_back(ce.edge_ids[i], ce.eq[i]);
            std::sort(s.begin(), s.end());
            return s;
        }

        auto add_scaled(const Sparse & acc, const Sparse & x, int64_t lambda, Sparse & out) -> void
        {
            out.clear();
            size_t i = 0, j = 0;
            while (i < acc.size() || j < x.size()) {
                if (j == x.size() || (i < acc.size() && acc[i].first < x[j].first))
                    out.push_back(acc[i++]);
                else if (i == acc.size() || x[j].first < acc[i].first) {
                    out.emplace_back(x[j].first, lambda * x[j].second);
                    ++j;
                }
                else {
                    auto v = acc[i].second + lambda * x[j].second;
                    if (v != 0)
                        out.emplace_back(acc[i].first, v);
                    ++i;
                    ++j;
                }
            }
        }

        // Genus one, with a cheap rejection when some a and -a both occur.
        auto sparse_genus_one(const Sparse & s, vector<int64_t> & scratch) -> bool
        {
            if (s.size() < 2)
                return false;
            scratch.clear();
            for (auto & [e, a] : s)
                scratch.push_back(a);
            if (s.size() > 2) {
                auto sorted = scratch;
                std::sort(sorted.begin(), sorted.end());
                for (auto a : scratch)
                    if (a > 0 && std::binary_search(sorted.begin(), sorted.end(), -a))
                        return false;
            }
            return ! has_proper_zero_sum_subset(scratch);
        }

        class CombinationSearch
        {
        public:
            CombinationSearch(const CycleEquationSystem & system, const SearchBounds & bounds) :
                _system(system), _bounds(bounds)
            {
                for (auto & ce : system.equations)
                    _sparse.push_back(to_sparse(ce));
                _levels.resize(bounds.t + 1);
            }

            auto run() -> std::optional<CombinationWitness>
            {
                for (size_t r = 1; r <= _bounds.t && r <= _sparse.size(); ++r) {
                    _indices.clear();
                    _multipliers.clear();
                    _levels[0].clear();
                    if (choose(r, 0, 0))
                        return make_witness();
                }
                return std::nullopt;
            }

        private:
            // pick cycle number `depth` (of r) with index >= from, then its multiplier
            auto choose(size_t r, size_t depth, size_t from) -> bool
            {
                if (depth == r) {
                    int64_t g = 0;
                    for (auto m : _multipliers)
                        g = std::gcd(g, m);
                    if (g != 1)
                        return false;
                    return sparse_genus_one(_levels[depth], _scratch);
                }
                for (size_t i = from; i + (r - depth) <= _sparse.size(); ++i) {
                    _indices.push_back(i);
                    for (int64_t m = depth == 0 ? 1 : -_bounds.L; m <= _bounds.L; ++m) {
                        if (m == 0)
                            continue;
                        _multipliers.push_back(m);
                        add_scaled(_levels[depth], _sparse[i], m, _levels[depth + 1]);
                        if (choose(r, depth + 1, i + 1))
                            return true;
                        _multipliers.pop_back();
                    }
                    _indices.pop_back();
                }
                return false;
            }

            auto make_witness() -> CombinationWitness
            {
                const auto & s = _levels[_multipliers.size()];
                vector<int64_t> coeffs;
                CombinationWitness w{{}, _multipliers, {}, Equation::validate({1, -1}), true, false};
                for (auto & [e, a] : s) {
                    w.edge_ids.push_back(e);
                    coeffs.push_back(a);
                }
                for (auto i : _indices)
                    w.cycles.push_back(_system.equations[i].cycle);
                w.eq = Equation::validate(std::move(coeffs));
                w.convex = is_convex(w.eq);
                return w;
            }

            const CycleEquationSystem & _system;
            SearchBounds _bounds;
            vector<Sparse> _sparse;
            vector<Sparse> _levels; // _levels[d]: combination of the first d chosen cycles
            vector<size_t> _indices;
            vector<int64_t> _multipliers;
            vector<int64_t> _scratch;
        };
    }

    auto genus_one_combination_search(const CycleEquationSystem & system, const SearchBounds & bounds) -> std::optional<CombinationWitness>
    {
        if (bounds.t == 0 || bounds.L < 1)
            throw Error(ErrorKind::InvalidInput, "search bounds t and L must be positive");
        auto found = CombinationSearch{system, bounds}.run();
        if (! found && system.truncated)
            throw Error(ErrorKind::Truncated, "no witness among the enumerated cycles, but the cycle list was capped");
        return found;
    }

    auto genus_one_combination_search(const ColouredGraph & g, const ColourOrdering & c, const SearchBounds & bounds) -> std::optional<CombinationWitness>
    {
        return genus_one_combination_search(build_system(g, c, false, bounds.max_count, bounds.max_len), bounds);
    }

    auto recheck_witness(const CombinationWitness & w, const ColouredGraph & g, const ColourOrdering & c) -> bool
    {
        if (w.cycles.size() != w.multipliers.size() || w.cycles.empty())
            return false;
        std::map<size_t, int64_t> combined;
        for (size_t k = 0; k < w.cycles.size(); ++k) {
            auto ce = build_cycle_equation(w.cycles[k], g, c);
            for (size_t i = 0; i < ce.edge_ids.size(); ++i)
                combined[ce.edge_ids[i]] += w.multipliers[k] * ce.eq[i];
        }
        vector<size_t> ids;
        vector<int64_t> coeffs;
        for (auto [e, a] : combined)
            if (a != 0) {
                ids.push_back(e);
                coeffs.push_back(a);
            }
        if (ids != w.edge_ids || ! std::equal(coeffs.begin(), coeffs.end(), w.eq.coefficients().begin(), w.eq.coefficients().end()))
            return false;
        bool genus_one = w.eq.size() <= max_genus_variables ? genus(w.eq).genus == 1 : is_genus_one(w.eq);
        return genus_one == w.genus_one && is_convex(w.eq) == w.convex;
    }

    auto to_string(ColouringCheck c) -> std::string_view
    {
        switch (c) {
        case ColouringCheck::GenusOne: return "genus1";
        case ColouringCheck::Convex: return "convex";
        case ColouringCheck::Symmetric: return "symmetric";
        case ColouringCheck::Cycle: return "cycle";
        }
        return "unknown";
    }

    auto parse_colouring_check(std::string_view s) -> ColouringCheck
    {
        for (auto c : {ColouringCheck::GenusOne, ColouringCheck::Convex, ColouringCheck::Symmetric, ColouringCheck::Cycle})
            if (to_string(c) == s)
                return c;
        throw Error(ErrorKind::InvalidInput, "unknown check '" + std::string{s} + "' (genus1, convex, symmetric, cycle)");
    }

    auto proper_3_colourings(const Graph & g, bool canonical) -> vector<vector<Vertex>>
    {
        const size_t n = g.n();
        vector<vector<Vertex>> out;
        vector<Vertex> colour(n, 0);
        auto rec = [&](auto & self, size_t v, Vertex used) -> void {
            if (v == n) {
                out.push_back(colour);
                return;
            }
            const Vertex limit = canonical ? std::min<Vertex>(3, used + 1) : 3;
            for (Vertex c = 0; c < limit; ++c) {
                bool ok = true;
                for (auto w : g.neighbours(static_cast<Vertex>(v)))
                    if (w < v && colour[w] == c) {
                        ok = false;
                        break;
                    }
                if (! ok)
                    continue;
                colour[v] = c;
                self(self, v + 1, std::max<Vertex>(used, c + 1));
            }
        };
        rec(rec, 0, 0);
        return out;
    }

    namespace
    {
        auto colours_used(const vector<Vertex> & colouring) -> size_t
        {
            Vertex m = 0;
            for (auto c : colouring)
                m = std::max(m, c + 1);
            return m;
        }

        auto evaluate(const Graph & host, const vector<vector<Vertex>> & cycles, bool cycles_truncated, const vector<Vertex> & colouring,
            size_t index, const CheckAllOptions & options) -> ColouringVerdict
        {
            const auto k3 = Graph::complete(3);
            auto g = validate_coloured(host, k3, colouring);
            ColouringVerdict v;
            v.index = index;
            v.colouring = colouring;
            v.orbit_size = options.symmetry_reduction ? (colours_used(colouring) <= 1 ? 3 : 6) : 1;

            switch (options.check) {
            case ColouringCheck::GenusOne: {
                vector<ColourOrdering> orderings;
                if (options.all_orderings)
                    orderings = ColourOrdering::all_permutations(3);
                else if (options.symmetry_reduction) {
                    // colouring pi.sigma under c equals sigma under c.pi; reversing an
                    // ordering only negates every equation
                    for (auto values : {vector<int64_t>{1, 2, 3}, vector<int64_t>{1, 3, 2}, vector<int64_t>{2, 1, 3}})
                        orderings.push_back(ColourOrdering::validate(values));
                }
                else
                    orderings.push_back(ColourOrdering::identity(3));

                CycleEquationSystem system;
                system.truncated = cycles_truncated;
                bool all_found = true, any_found = false;
                for (auto & c : orderings) {
                    system.equations = equations_for(cycles, g, c);
                    std::optional<CombinationWitness> w;
                    try {
                        w = genus_one_combination_search(system, options.bounds);
                    }
                    catch (const Error & e) {
                        if (e.kind() != ErrorKind::Truncated)
                            throw;
                    }
                    all_found = all_found && w.has_value();
                    any_found = any_found || w.has_value();
                    v.orderings.push_back(OrderingOutcome{c, std::move(w), std::nullopt});
                    if (options.all_orderings && any_found)
                        break;
                }
                v.holds = options.all_orderings ? any_found : all_found;
                v.verdict = v.holds ? "witness-found" : (cycles_truncated ? "inconclusive-truncated" : "no-witness-within-bounds");
                break;
            }
            case ColouringCheck::Convex: {
                for (auto & c : ColourOrdering::all_permutations(3)) {
                    auto w = exists_convex_combination(g, c, options.bounds.max_count);
                    bool found = w.has_value();
                    v.orderings.push_back(OrderingOutcome{c, std::nullopt, std::move(w)});
                    if (found) {
                        v.holds = true;
                        break;
                    }
                }
                v.verdict = v.holds ? "convex-found" : "no-convex";
                break;
            }
            case ColouringCheck::Symmetric: {
                v.symmetry = eqs_all_symmetric(g);
                v.holds = v.symmetry->all_symmetric;
                v.verdict = v.holds ? "all-symmetric" : "wrapped";
                break;
            }
            case ColouringCheck::Cycle: {
                v.cycle = classify_cycle(g);
                v.holds = v.cycle->abundant;
                v.verdict = v.holds ? "Abundant" : "NotAbundant";
                break;
            }
            }
            return v;
        }
    }

    auto check_all_colourings(const Graph & g, const CheckAllOptions & options, const std::function<void(const ColouringVerdict &)> & sink)
        -> CheckAllSummary
    {
        if (g.n() > max_check_all_vertices)
            throw Error(ErrorKind::ScaleExceeded, "colouring enumeration is limited to " + to_string(max_check_all_vertices) + " vertices");

        auto colourings = proper_3_colourings(g, options.symmetry_reduction);
        vector<vector<Vertex>> cycles;
        bool truncated = false;
        if (options.check == ColouringCheck::GenusOne) {
            auto list = enumerate_cycles(g, options.bounds.max_count, options.bounds.max_len);
            cycles = std::move(list.cycles);
            truncated = list.truncated();
        }

        CheckAllSummary summary;
        summary.symmetry_reduction = options.symmetry_reduction;
        auto record = [&](const ColouringVerdict & v) {
            ++summary.classes;
            summary.colourings += v.orbit_size;
            if (v.holds)
                ++summary.holding;
            else
                summary.failing.push_back(v.index);
            sink(v);
        };

        const unsigned jobs = std::max(1u, options.jobs);
        for (size_t start = 0; start < colourings.size(); start += jobs) {
            const size_t end = std::min(colourings.size(), start + jobs);
            if (jobs == 1) {
                record(evaluate(g, cycles, truncated, colourings[start], start, options));
                continue;
            }
            vector<std::future<ColouringVerdict>> batch;
            for (size_t i = start; i < end; ++i)
                batch.push_back(std::async(std::launch::async, [&, i] {
                    return evaluate(g, cycles, truncated, colourings[i], i, options);
                }));
            for (auto & f : batch)
                record(f.get());
        }
        return summary;
    }
}
