#include <eqgraph/error.hpp>
#include <eqgraph/fixtures.hpp>
#include <eqgraph/io.hpp>

#include <gtest/gtest.h>

using namespace eqgraph;

namespace
{
    auto rejects(auto && f) -> bool
    {
        try {
            f();
        } catch (const Error & e) {
            return e.kind() == ErrorKind::InvalidInput || e.kind() == ErrorKind::ZeroCoefficient ||
                e.kind() == ErrorKind::NonzeroSum || e.kind() == ErrorKind::TooShort || e.kind() == ErrorKind::NotAHomomorphism || e.kind() == ErrorKind::NotSurjective;
        }
        return false;
    }
}

TEST(Io, GraphRoundTrip)
{
    for (auto g : {Graph::petersen(), Graph::cycle(7), Graph{4, {}}, Graph::complete(5)}) {
        auto text = dump(graph_json(g));
        EXPECT_EQ(parse_graph(parse_json_text(text)), g);
        EXPECT_EQ(parse_host(parse_json_text(dump(graph_json(g), true))), g);
    }
}

TEST(Io, ColouredAndRawRoundTrip)
{
    auto cg = fig2_petersen_target();
    auto j = coloured_json(cg);
    EXPECT_EQ(parse_coloured(j), cg);
    EXPECT_EQ(parse_host(j), cg.host);
    auto raw = to_raw(cg);
    EXPECT_EQ(parse_raw(raw_json(raw)), raw);
}

TEST(Io, CertificateRoundTrip)
{
    for (auto cert : {fig1_c5_certificate(), fig2_petersen_certificate()}) {
        auto j = certificate_json(cert);
        auto back = parse_certificate(parse_json_text(dump(j)));
        EXPECT_EQ(certificate_json(back), j);
        EXPECT_TRUE(verify_certificate(back).accepted);
    }
}

TEST(Io, SmallDocuments)
{
    EXPECT_EQ(parse_set(parse_json_text("[5, 1, 3]")), (std::vector<std::int64_t>{1, 3, 5}));
    EXPECT_EQ(dump(set_json(std::vector<std::int64_t>{4, 2})), "[2,4]");
    auto eq = Equation::validate({1, 1, -2});
    EXPECT_EQ(parse_equation(equation_json(eq)), eq);
    auto c = ColourOrdering::validate({3, 1, 2});
    EXPECT_EQ(parse_ordering(ordering_json(c)), c);
    FCopyPacking p{{0, 1, 2}, {3, 4, 5}};
    EXPECT_EQ(parse_packing(packing_json(p)), p);
    EXPECT_EQ(count_json(BigCount{42}), Json(42));
    BigCount big = BigCount{1} << 80;
    EXPECT_EQ(count_json(big), Json(big.str()));
}

TEST(Io, MalformedInputRejected)
{
    EXPECT_TRUE(rejects([] { parse_json_text("{\"n\": 3,"); }));
    EXPECT_TRUE(rejects([] { parse_graph(parse_json_text("{\"edges\": []}")); }));
    EXPECT_TRUE(rejects([] { parse_graph(parse_json_text("{\"n\": 3, \"edges\": [[0, 1, 2]]}")); }));
    EXPECT_TRUE(rejects([] { parse_graph(parse_json_text("{\"n\": 3, \"edges\": [[0, 0]]}")); }));
    EXPECT_TRUE(rejects([] { parse_graph(parse_json_text("{\"n\": 3, \"edges\": [[0, 5]]}")); }));
    EXPECT_TRUE(rejects([] { parse_graph(parse_json_text("{\"n\": -1, \"edges\": []}")); }));
    EXPECT_TRUE(rejects([] { parse_graph(parse_json_text("{\"n\": \"3\", \"edges\": []}")); }));
    EXPECT_TRUE(rejects([] { parse_set(parse_json_text("[1, 1]")); }));
    EXPECT_TRUE(rejects([] { parse_set(parse_json_text("[1.5]")); }));
    EXPECT_TRUE(rejects([] { parse_equation(parse_json_text("[1, 1]")); }));
    EXPECT_TRUE(rejects([] { parse_packing(parse_json_text("{\"copies\": []}")); }));
    EXPECT_TRUE(rejects([] { parse_certificate(parse_json_text("{\"root\": \"a\"}")); }));
    EXPECT_TRUE(rejects([] { read_json_file("/nonexistent/file.json"); }));
    auto cg = coloured_json(fig1_c5_target());
    cg["sigma"] = Json::array({0, 0, 0, 0, 0});
    EXPECT_TRUE(rejects([&] { parse_coloured(cg); }));
}

TEST(Io, DamagedCertificateContentLoads)
{
    // content problems are for the verifier, not the loader
    auto j = certificate_json(fig1_c5_certificate());
    j["nodes"][0]["output_graph"]["sigma"][0] = 1;
    auto cert = parse_certificate(j);
    auto r = verify_certificate(cert);
    EXPECT_FALSE(r.accepted);
    ASSERT_TRUE(r.failure.has_value());
    EXPECT_FALSE(r.failure->node.empty());
}
