#include <gtest/gtest.h>

#include <rigidres/io.hpp>

#include "corpus.hpp"

using namespace rigidres;

namespace {

const FieldSpec Q = FieldSpec::rationals();

std::size_t parse_error_line(const std::string& text)
{
    try {
        parse_complex(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    ADD_FAILURE() << "no ParseError for:\n" << text;
    return 0;
}

} // namespace

TEST(LatticeJson, RoundTrip)
{
    for (const auto& l : {FiniteAtomicLattice::boolean(3), lcm_lattice(corpus::concentrated_nonrigid()).lattice(),
                          lcm_lattice(corpus::dispersed_rigid()).lattice()}) {
        const auto j = lattice_to_json(l);
        EXPECT_EQ(lattice_from_json(j), l);
        EXPECT_EQ(parse_lattice_json(j.dump()), l);
    }
    const auto m = lattice_to_json(lcm_lattice(corpus::M()).lattice());
    EXPECT_EQ(m.dump(), R"({"n":3,"elements":[[],[1],[2],[3],[1,2],[2,3],[1,2,3]]})");
}

TEST(LatticeJson, RejectsMalformedInput)
{
    for (const char* bad : {"[1,2]", R"({"n":2})", R"({"n":0,"elements":[]})", R"({"n":2,"elements":[[],[1],[3],[1,2]]})",
                            R"({"n":2,"elements":[[],[1],[1,2]]})", R"({"n":-1,"elements":[]})", "{not json"})
        EXPECT_THROW(parse_lattice_json(bad), ParseError) << bad;
    // duplicates and unordered atoms are tolerated
    EXPECT_NO_THROW(parse_lattice_json(R"({"n":2,"elements":[[],[1],[2],[2],[2,1]]})"));
}

TEST(ComplexFormat, ParsesAndFormats)
{
    const auto c = parse_complex("# triangle boundary\nvertices: 3\n1 2\n\n2 3\n1 3\n");
    EXPECT_EQ(c.vertex_count(), 3u);
    EXPECT_EQ(c.facets().size(), 3u);
    EXPECT_EQ(format_complex(c), "vertices: 3\n1 2\n1 3\n2 3\n");
    EXPECT_EQ(parse_complex(format_complex(corpus::rp2())).facets(), corpus::rp2().facets());
    // non-maximal faces are dropped
    EXPECT_EQ(parse_complex("vertices: 3\n1 2 3\n1 2\n3\n").facets(), std::vector<Mask>{0b111});
}

TEST(ComplexFormat, ErrorsCarryLineNumbers)
{
    EXPECT_EQ(parse_error_line("1 2\n"), 1u);
    EXPECT_EQ(parse_error_line("# c\nvertices: 0\n"), 2u);
    EXPECT_EQ(parse_error_line("vertices: 3\n1 2\n2 x\n"), 3u);
    EXPECT_EQ(parse_error_line("vertices: 3\n1 2\n\n2 4\n"), 4u);
    EXPECT_EQ(parse_error_line("vertices: 3\n"), 2u);
    EXPECT_EQ(parse_error_line(""), 1u);
    // vertex 3 in no facet
    EXPECT_THROW(parse_complex("vertices: 3\n1 2\n"), ParseError);
}

TEST(Inputs, KindDetection)
{
    const auto ideal = load_input_text("# comment\nvars: a b\na^2\na*b\nb^2\na^3\n");
    EXPECT_EQ(ideal.kind, LoadedInput::Kind::Ideal);
    EXPECT_EQ(ideal.given_generators, 4u);
    ASSERT_TRUE(ideal.lcm.has_value());
    EXPECT_EQ(ideal.lcm->ideal().generators().size(), 3u);
    EXPECT_EQ(ideal.lattice->size(), 7u);

    const auto lattice = load_input_text(R"({"n":2,"elements":[[],[1],[2],[1,2]]})");
    EXPECT_EQ(lattice.kind, LoadedInput::Kind::Lattice);
    EXPECT_FALSE(lattice.lcm.has_value());
    EXPECT_EQ(*lattice.lattice, FiniteAtomicLattice::boolean(2));

    const auto complex = load_input_text("vertices: 3\n1 2\n2 3\n");
    EXPECT_EQ(complex.kind, LoadedInput::Kind::Complex);
    ASSERT_TRUE(complex.complex.has_value());
    EXPECT_EQ(complex.lattice->atom_count(), 3u);

    // faces of a complex are closed under intersection, so this is always a lattice
    EXPECT_EQ(load_input_text("vertices: 4\n1 2 3\n1 2 4\n").lattice->size(), 13u);
}

TEST(Inputs, DataFilesLoad)
{
    const std::string dir = RIGIDRES_DATA_DIR;
    EXPECT_EQ(load_input_file(dir + "/M.ideal").lattice->size(), 7u);
    EXPECT_EQ(*load_input_file(dir + "/M.lattice.json").lattice, *load_input_file(dir + "/M.ideal").lattice);
    EXPECT_EQ(load_input_file(dir + "/rp2.complex").kind, LoadedInput::Kind::Complex);
    EXPECT_EQ(*load_input_file(dir + "/rp2.ideal").lattice, *load_input_file(dir + "/rp2.complex").lattice);
    EXPECT_THROW(load_input_file(dir + "/missing.ideal"), std::runtime_error);
}

TEST(Rendering, BettiGridAndListingForM)
{
    const auto lcm = lcm_lattice(corpus::M());
    const auto table = betti_table(lcm, Q);
    EXPECT_EQ(betti_grid(table, &lcm), "       0 1 2\n"
                                        "total: 1 3 2\n"
                                        "    0: 1 . .\n"
                                        "    1: . 3 2\n");
    const std::string listing = multigraded_listing(table, &lcm);
    EXPECT_NE(listing.find("beta_2 = 1 at {1,2} a^2*b\n"), std::string::npos);
    EXPECT_NE(listing.find("beta_0 = 1 at {} 1\n"), std::string::npos);
    const auto j = betti_json(table, &lcm);
    EXPECT_EQ(j["totals"], Json({1, 3, 2}));
    EXPECT_EQ(j["entries"].size(), 6u);
    EXPECT_EQ(j["entries"][5]["multidegree"], "a*b^2");
}

TEST(Rendering, BettiGridForN)
{
    const auto lcm = lcm_lattice(corpus::N());
    EXPECT_EQ(betti_grid(betti_table(lcm, Q), &lcm), "       0 1 2\n"
                                                      "total: 1 3 2\n"
                                                      "    0: 1 . .\n"
                                                      "    1: . 2 1\n"
                                                      "    2: . 1 1\n");
}

TEST(Rendering, DotHasEveryCoverEdge)
{
    const auto l = FiniteAtomicLattice::boolean(3);
    const std::string dot = to_dot(l);
    EXPECT_EQ(dot.rfind("digraph lattice {", 0), 0u);
    EXPECT_NE(dot.find("rankdir=BT"), std::string::npos);
    std::size_t edges = 0;
    for (std::size_t at = dot.find("->"); at != std::string::npos; at = dot.find("->", at + 1))
        ++edges;
    EXPECT_EQ(edges, 12u);
}

TEST(Classification, TextReportsWitnesses)
{
    const auto n = lcm_lattice(corpus::N());
    const std::string text = classification_text(classify(n.lattice(), &n, Q), n.lattice(), &n);
    EXPECT_NE(text.find("rigid: no (R2: in degree 2, a*b*c < a^2*b*c)"), std::string::npos);
    EXPECT_NE(text.find("lattice-linear: no (for the computed basis; ideal not rigid)"), std::string::npos);

    const auto e = lcm_lattice(corpus::dispersed_rigid());
    const auto c = classify(e.lattice(), &e, Q);
    const std::string etext = classification_text(c, e.lattice(), &e);
    EXPECT_NE(etext.find("rigid: yes"), std::string::npos);
    EXPECT_NE(etext.find("concentrated: no (witness "), std::string::npos);
    EXPECT_NE(etext.find("interval homology invariance: yes"), std::string::npos);

    const auto j = classification_json(c, e.lattice(), &e);
    for (const char* key : {"field", "totals", "rigidity", "concentration", "lattice_linear", "interval_homology_invariance"})
        EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_EQ(j["concentration"]["concentrated"], false);
    EXPECT_TRUE(j["concentration"]["witness"].contains("multidegree"));
}

TEST(Classification, PlainLatticesAreCoordinatized)
{
    const auto b = FiniteAtomicLattice::boolean(3);
    const auto c = classify(b, nullptr, Q);
    EXPECT_TRUE(c.rigidity.rigid);
    EXPECT_TRUE(c.linearity.lattice_linear);
    EXPECT_EQ(c.totals, (std::vector<std::size_t>{1, 3, 3, 1}));
}

TEST(ResolutionJson, ShapeMatchesTheResolution)
{
    const auto res = minimal_resolution(corpus::M(), Q);
    const auto j = resolution_json(res);
    EXPECT_EQ(j["ranks"], Json({1, 3, 2}));
    EXPECT_EQ(j["vars"], Json({"a", "b"}));
    EXPECT_EQ(j["minimal"], true);
    ASSERT_EQ(j["degrees"].size(), 3u);
    EXPECT_FALSE(j["degrees"][0].contains("differential"));
    EXPECT_EQ(j["degrees"][2]["differential"].size(), 3u);
    EXPECT_EQ(j["degrees"][2]["differential"][0].size(), 2u);
}

TEST(AtlasOutput, SortedAndWorkerIndependent)
{
    const auto keys = enumerate_Ln(3).keys;
    const auto one = stratify(keys, Q, 1), four = stratify(keys, Q, 4);
    const std::string lines = atlas_jsonl(one);
    EXPECT_EQ(lines, atlas_jsonl(four));
    EXPECT_EQ(atlas_edges_jsonl(one), atlas_edges_jsonl(four));
    EXPECT_EQ(std::count(lines.begin(), lines.end(), '\n'), 8);
    std::istringstream in(lines);
    std::string line;
    std::vector<Json> rows;
    while (std::getline(in, line))
        rows.push_back(Json::parse(line));
    for (std::size_t i = 1; i < rows.size(); ++i)
        EXPECT_LT(rows[i - 1]["key"].get<std::vector<Mask>>(), rows[i]["key"].get<std::vector<Mask>>());
    EXPECT_EQ(strata_summary(one), "(1,3,2): 7 lattices, 3 rigid, 7 concentrated, 1 minimal\n"
                                   "(1,3,3,1): 1 lattices, 1 rigid, 1 concentrated, 1 minimal\n");
}

TEST(AtlasOutput, ReadsBackWhatItWrites)
{
    const auto strata = stratify(enumerate_Ln(4).keys, Q);
    std::istringstream atlas(atlas_jsonl(strata)), edges(atlas_edges_jsonl(strata));
    const auto back = strata_from_jsonl(atlas, edges);
    ASSERT_EQ(back.size(), strata.size());
    for (const auto& [beta, rec] : strata) {
        const auto& other = back.at(beta);
        EXPECT_EQ(other.field, rec.field);
        ASSERT_EQ(other.members.size(), rec.members.size());
        for (std::size_t i = 0; i < rec.members.size(); ++i) {
            EXPECT_EQ(other.members[i].key, rec.members[i].key);
            EXPECT_EQ(other.members[i].rigid, rec.members[i].rigid);
            EXPECT_EQ(other.members[i].concentrated, rec.members[i].concentrated);
        }
        EXPECT_EQ(other.covers, rec.covers);
    }
    EXPECT_EQ(atlas_jsonl(back), atlas_jsonl(strata));
    EXPECT_EQ(strata_summary(back), strata_summary(strata));
}

TEST(AtlasOutput, MalformedAtlasLinesNameTheLine)
{
    const std::string good = atlas_jsonl(stratify(enumerate_Ln(3).keys, Q));
    auto line_of = [](const std::string& atlas, const std::string& edges) -> std::size_t {
        std::istringstream a(atlas), e(edges);
        try {
            strata_from_jsonl(a, e);
        } catch (const ParseError& err) {
            return err.line();
        }
        return 0;
    };
    EXPECT_EQ(line_of(good + "{oops\n", ""), 9u);
    EXPECT_EQ(line_of(good + R"({"key":[0,1,2,4,7],"n":3,"betti":[1,3,2],"rigid":false,"concentrated":true,"field":"F2"})" "\n", ""), 9u);
    EXPECT_EQ(line_of(good, R"({"betti":[1,3,2],"lower":[0,1,2,4,7],"upper":[0,1,2,4,3,5,6,7]})" "\n"), 1u);
    EXPECT_EQ(line_of(good, "\n" R"({"betti":[9],"lower":[],"upper":[]})" "\n"), 2u);
    EXPECT_EQ(line_of(good, ""), 0u);
}
