#pragma once

#include <eqgraph/graph.hpp>

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace eqgraph
{
    /// Node output as written in a certificate. Kept unvalidated so that a
    /// damaged certificate is reported by the verifier rather than the loader.
    struct RawColouredGraph
    {
        std::size_t n = 0;
        std::vector<Edge> edges;
        std::vector<Vertex> sigma;

        auto operator==(const RawColouredGraph &) const -> bool = default;
    };

    auto to_raw(const ColouredGraph & g) -> RawColouredGraph;

    // Step parameters. Vertex numbers refer to the child outputs; maps send
    // child vertices to output vertices (-1 for vertices that disappear).

    struct AtomStep
    {
    };

    /// New vertex (numbered child.n) joined to `attach`, coloured `colour`.
    struct PeelStep
    {
        std::vector<Vertex> attach;
        Vertex colour = 0;
    };

    /// Children (H, H'). The edge uv of H is deleted, u and v are blown up to
    /// |U'| and |V'| copies which are identified with U' and V' in H'.
    struct GlueBlowupStep
    {
        Vertex u = 0, v = 0;
        std::vector<Vertex> u_set, v_set;
        std::vector<std::int64_t> h_map, h2_map;
    };

    /// Children (H, H'): disjoint union plus colour a in H to colour a2 in H'
    /// and colour b in H to colour a in H'.
    struct JoinStep
    {
        Vertex a = 0, b = 0, a2 = 0;
        std::vector<std::int64_t> h_map, h2_map;
    };

    /// Output vertex i is child vertex keep[i]; output edges must be a subset
    /// of the child's edges between kept vertices.
    struct SubgraphStep
    {
        std::vector<Vertex> keep;
    };

    struct BlowupStep
    {
        std::vector<std::size_t> sizes;
    };

    using Step = std::variant<AtomStep, PeelStep, GlueBlowupStep, JoinStep, SubgraphStep, BlowupStep>;

    auto step_name(const Step & s) -> std::string;

    struct CertificateNode
    {
        std::string id;
        Step step;
        std::vector<std::string> children;
        RawColouredGraph output;
    };

    struct AbundanceCertificate
    {
        Graph pattern;
        RawColouredGraph target;
        std::string root;
        std::vector<CertificateNode> nodes;
    };

    struct CertificateFailure
    {
        std::string node;
        std::string condition;
    };

    struct VerifyResult
    {
        bool accepted = false;
        std::optional<CertificateFailure> failure;
        bool root_matched_by_canonical_form = false;
    };

    /// Replays every node from its children and checks the side conditions of
    /// its step. Never throws on malformed content; reports the first failure.
    auto verify_certificate(const AbundanceCertificate & cert) -> VerifyResult;

    /// Reconstructs the output of a step from its (already valid) children.
    /// Throws Error{InvalidInput} naming the violated condition.
    auto apply_step(const Graph & pattern, const Step & step, const std::vector<const ColouredGraph *> & children) -> ColouredGraph;

    constexpr std::uint64_t default_canonical_budget = 2'000'000;

    /// Colour-respecting canonical relabelling by refinement and
    /// individualisation (twins are branched on once). Two coloured graphs
    /// are colour-isomorphic iff their canonical forms are equal.
    /// Throws Error{BudgetExhausted}.
    auto canonical_form(const ColouredGraph & g, std::uint64_t budget = default_canonical_budget) -> RawColouredGraph;

    /// Builds certificates with vertices named by caller-chosen labels; each
    /// intermediate graph tracks its label order.
    class CertificateBuilder
    {
    public:
        struct Ref
        {
            std::size_t index;
        };

        explicit CertificateBuilder(Graph pattern);

        /// colours[i] is the colour of labels[i]; at most one edge.
        auto atom(std::vector<Vertex> labels, std::vector<Vertex> colours, std::vector<Edge> label_edges = {}) -> Ref;
        auto peel(Ref child, Vertex label, std::vector<Vertex> attach_labels, Vertex colour) -> Ref;
        /// Replace the edge u_label v_label of h by h2, identifying u_set / v_set.
        auto glue(Ref h, Vertex u_label, Vertex v_label, Ref h2, std::vector<Vertex> u_set_labels, std::vector<Vertex> v_set_labels) -> Ref;
        auto join(Ref h, Ref h2, Vertex a, Vertex b, Vertex a2) -> Ref;
        /// Keep the listed labels (in that order) and only the listed edges.
        auto subgraph(Ref child, std::vector<Vertex> keep_labels, std::vector<Edge> label_edges) -> Ref;
        auto blowup(Ref child, std::vector<std::size_t> sizes, std::vector<std::vector<Vertex>> new_labels) -> Ref;

        [[nodiscard]] auto labels(Ref r) const -> const std::vector<Vertex> & { return _labels[r.index]; }
        [[nodiscard]] auto graph(Ref r) const -> const ColouredGraph & { return _graphs[r.index]; }

        /// Appends a relabelling so the root output is exactly `target` with
        /// label i at vertex i, then returns the certificate.
        auto finish(Ref root, const ColouredGraph & target) -> AbundanceCertificate;

    private:
        auto add(Step step, std::vector<Ref> children, ColouredGraph out, std::vector<Vertex> labels) -> Ref;
        auto index_of(Ref r, Vertex label) const -> Vertex;

        Graph _pattern;
        std::vector<CertificateNode> _nodes;
        std::vector<ColouredGraph> _graphs;
        std::vector<std::vector<Vertex>> _labels;
    };

    struct PeelOrder
    {
        std::vector<Vertex> removal_order; // vertices in the order they are peeled off
        std::vector<Vertex> atom_vertices;
        AbundanceCertificate certificate;
    };

    /// Repeatedly removes the smallest vertex whose neighbourhood is nonempty
    /// and monochromatic until at most one edge remains. Removable vertices
    /// stay removable as the graph shrinks, so the greedy order succeeds
    /// whenever any order does.
    auto peel_order_search(const ColouredGraph & g) -> std::optional<PeelOrder>;

    constexpr std::uint64_t default_split_budget = 1'000'000;

    struct SplitResult
    {
        AbundanceCertificate certificate;
        std::size_t joins = 0;
    };

    /// Recursive two-colour edge cuts. Sides are induced subgraphs, and every
    /// induced subgraph of a decomposable graph is decomposable, so the first
    /// valid cut found never needs to be revisited.
    /// Throws Error{BudgetExhausted} after `budget` cut attempts.
    auto splittable_decompose(const ColouredGraph & g, std::uint64_t budget = default_split_budget) -> std::optional<SplitResult>;

    /// (H, sigma)_e: two copies, colour a of copy 1 joined to colour b of
    /// copy 2 and vice versa; copy 2 is offset by |H|.
    /// Throws Error{NotSurjective}.
    auto double_along_edge(const ColouredGraph & g, Edge e) -> ColouredGraph;

    constexpr std::size_t max_hm_vertices = 1'000'000;

    /// H^0 = seed, H^{j+1} = (H^j)_{e_{j mod e(F)}} over the sorted edge list of F.
    /// Throws Error{ScaleExceeded | NotSurjective}.
    auto build_Hm(const ColouredGraph & seed, std::size_t m) -> ColouredGraph;

    /// |F| isolated vertices, vertex i coloured i.
    auto bijective_seed(const Graph & pattern) -> ColouredGraph;
}
