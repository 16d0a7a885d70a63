#include <eqgraph/fixtures.hpp>

namespace eqgraph
{
    auto fig1_c5_target() -> ColouredGraph
    {
        return validate_coloured(Graph::cycle(5), Graph::complete(3), {0, 1, 2, 0, 2});
    }

    auto fig1_c5_certificate() -> AbundanceCertificate
    {
        auto target = fig1_c5_target();
        CertificateBuilder b{target.pattern};
        auto path = b.atom({4, 0}, {2, 0}, {Edge{0, 4}});
        path = b.peel(path, 1, {0}, 1);
        path = b.peel(path, 2, {1}, 2);
        auto c5 = b.peel(path, 3, {2, 4}, 0);
        return b.finish(c5, target);
    }

    auto fig2_petersen_target() -> ColouredGraph
    {
        return validate_coloured(Graph::petersen(), Graph::complete(3), {1, 0, 1, 0, 2, 0, 1, 2, 2, 0});
    }

    auto fig2_petersen_certificate() -> AbundanceCertificate
    {
        auto target = fig2_petersen_target();
        const auto & sigma = target.sigma;
        CertificateBuilder b{target.pattern};
        auto path3 = [&](Vertex x, Vertex mid, Vertex y) {
            auto p = b.atom({x, mid}, {sigma[x], sigma[mid]}, {make_edge(x, mid)});
            return b.peel(p, y, {mid}, sigma[y]);
        };

        // circles {3, 5, 9} against triangles {4, 7, 8}
        auto h = b.atom({3, 4}, {sigma[3], sigma[4]}, {Edge{3, 4}});
        h = b.peel(h, 5, {4}, sigma[5]);
        h = b.peel(h, 9, {4}, sigma[9]);
        h = b.peel(h, 7, {3, 5, 9}, sigma[7]);
        h = b.peel(h, 8, {3, 5, 9}, sigma[8]);

        h = b.glue(h, 7, 3, path3(7, 2, 3), {7}, {3});
        h = b.glue(h, 4, 5, path3(4, 0, 5), {4}, {5});
        h = b.glue(h, 9, 8, path3(9, 6, 8), {9}, {8});
        h = b.peel(h, 1, {0, 2, 6}, sigma[1]);
        return b.finish(h, target);
    }
}
