#pragma once

#include <eqgraph/abundance.hpp>
#include <eqgraph/checked.hpp>
#include <eqgraph/constructions.hpp>
#include <eqgraph/cycle_equations.hpp>
#include <eqgraph/equations.hpp>
#include <eqgraph/graph.hpp>
#include <eqgraph/removal.hpp>

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

// JSON forms of the library's inputs and reports. Parsers throw
// Error{InvalidInput} on malformed documents; certificate parsing only checks
// shape, leaving content to verify_certificate.
namespace eqgraph
{
    using Json = nlohmann::ordered_json;

    auto read_json_file(const std::filesystem::path & path) -> Json;
    auto parse_json_text(const std::string & text) -> Json;
    auto dump(const Json & j, bool pretty = false) -> std::string;

    auto graph_json(const Graph & g) -> Json;
    auto parse_graph(const Json & j) -> Graph;
    /// A bare {"n", "edges"} graph, or the host of a coloured-graph document.
    auto parse_host(const Json & j) -> Graph;

    auto coloured_json(const ColouredGraph & g) -> Json;
    auto parse_coloured(const Json & j) -> ColouredGraph;

    auto raw_json(const RawColouredGraph & g) -> Json;
    auto parse_raw(const Json & j) -> RawColouredGraph;

    auto certificate_json(const AbundanceCertificate & cert) -> Json;
    auto parse_certificate(const Json & j) -> AbundanceCertificate;

    auto set_json(std::span<const std::int64_t> set) -> Json;
    /// Sorted on return; repeated members are rejected.
    auto parse_set(const Json & j) -> std::vector<std::int64_t>;

    auto equation_json(const Equation & eq) -> Json;
    auto parse_equation(const Json & j) -> Equation;

    auto ordering_json(const ColourOrdering & c) -> Json;
    auto parse_ordering(const Json & j) -> ColourOrdering;

    /// A number while it fits in 64 bits, a decimal string beyond.
    auto count_json(const BigCount & c) -> Json;

    auto genus_json(const GenusResult & g) -> Json;
    auto cycle_equation_json(const CycleEquation & ce) -> Json;
    auto witness_json(const CombinationWitness & w) -> Json;
    auto symmetry_json(const SymmetryVerdict & s) -> Json;
    auto classification_json(const CycleClassification & c) -> Json;
    auto verdict_json(const ColouringVerdict & v) -> Json;
    auto summary_json(const CheckAllSummary & s) -> Json;
    auto verify_json(const VerifyResult & r) -> Json;

    auto behrend_json(const BehrendSet & b) -> Json;
    auto rs_json(const RSGraph & rs) -> Json;
    auto distinct_json(const DistinctSolveResult & r) -> Json;

    auto packing_json(const FCopyPacking & p) -> Json;
    auto parse_packing(const Json & j) -> FCopyPacking;
    auto uniform_check_json(const UniformFarCheck & c) -> Json;
    auto uniformize_json(const UniformizeResult & r) -> Json;
    auto dense_core_json(const DenseCoreReport & r) -> Json;
}
