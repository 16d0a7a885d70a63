#pragma once

#include <eqgraph/abundance.hpp>
#include <eqgraph/graph.hpp>

namespace eqgraph
{
    // Colours: circle 0, square 1, triangle 2.

    /// C5 with colours (0, 1, 2, 0, 2) along the cycle 0..4.
    auto fig1_c5_target() -> ColouredGraph;

    /// Path 4-0-1-2 from an atom and two peels, then vertex 3 peeled onto
    /// its two triangle neighbours.
    auto fig1_c5_certificate() -> AbundanceCertificate;

    /// Petersen graph (outer 0..4, inner 5..9) with outer colours
    /// (1, 0, 1, 0, 2) and inner colours (0, 1, 2, 2, 0).
    auto fig2_petersen_target() -> ColouredGraph;

    /// K_{3,3} on {3, 4, 5, 7, 8, 9}, three edges replaced by glued 3-paths
    /// through the square vertices 2, 0 and 6, then vertex 1 peeled on.
    auto fig2_petersen_certificate() -> AbundanceCertificate;
}
