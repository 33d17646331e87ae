#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "kgforge/rdf/turtle.hpp"
#include "support/generators.hpp"
#include "support/paths.hpp"

using namespace kgforge;
using rdf::Graph;
using rdf::Iri;
using rdf::Literal;
using rdf::parse_turtle;
using rdf::serialize_turtle;
using rdf::SyntaxError;

namespace {

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    EXPECT_TRUE(in) << "missing " << p;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Same canonical listing as tests/data/turtle/make_golden.js: sorted
// tab-separated lines with explicit datatypes, so parser output can be
// compared against the independently produced .golden files.
std::string canonical_listing(const Graph& g) {
    auto render = [](const rdf::Term& t) -> std::string {
        if (rdf::is_iri(t)) return "<" + rdf::as_iri(t).value + ">";
        if (rdf::is_blank(t)) return "_:" + rdf::as_blank(t).label;
        const Literal& lit = rdf::as_literal(t);
        std::string quoted = "\"" + rdf::detail::escape_literal(lit.lexical) + "\"";
        if (!lit.language.empty()) return quoted + "@" + lit.language;
        return quoted + "^^<" + lit.datatype.value + ">";
    };
    std::vector<std::string> lines;
    for (const auto& t : g.triples()) {
        lines.push_back(render(t.subject) + "\t<" + t.predicate.value + ">\t" + render(t.object));
    }
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const auto& line : lines) out += line + "\n";
    return out;
}

}  // namespace

TEST(TurtleParser, MinimalDocument) {
    Graph g = parse_turtle("@prefix ex: <http://example.org/> . ex:s ex:p ex:o .");
    EXPECT_EQ(g.size(), 1u);
    ASSERT_EQ(g.prefixes().size(), 1u);
    EXPECT_EQ(g.prefixes().at("ex"), "http://example.org/");
    EXPECT_TRUE(g.contains(rdf::make_triple(Iri{"http://example.org/s"},
                                            Iri{"http://example.org/p"},
                                            Iri{"http://example.org/o"})));
}

TEST(TurtleParser, EmptyDocument) {
    EXPECT_EQ(parse_turtle("").size(), 0u);
    EXPECT_EQ(parse_turtle("  \n\t# only a comment\n").size(), 0u);
}

TEST(TurtleParser, UndefinedPrefixReportsFirstErrorAtLineOne) {
    try {
        parse_turtle("ex:s ex:p");
        FAIL() << "expected SyntaxError";
    } catch (const SyntaxError& e) {
        EXPECT_EQ(e.line, 1);
        EXPECT_NE(std::string(e.message).find("undefined prefix"), std::string::npos);
    }
}

TEST(TurtleParser, ErrorPositionsAreTracked) {
    try {
        parse_turtle("@prefix ex: <http://example.org/> .\nex:s ex:p [ ] .");
        FAIL() << "expected SyntaxError";
    } catch (const SyntaxError& e) {
        EXPECT_EQ(e.line, 2);
        EXPECT_EQ(e.column, 11);
    }
}

TEST(TurtleParser, RejectsOutsideSubset) {
    const char* bad[] = {
        "@prefix ex: <http://example.org/> . ex:s ex:p [ ex:q ex:o ] .",
        "@prefix ex: <http://example.org/> . ex:s ex:p (1 2) .",
        "@base <http://example.org/> .",
        "<relative> <http://e.org/p> <http://e.org/o> .",
        "@prefix ex: <http://example.org/> . ex:s ex:p 1.5e3 .",
        "@prefix ex: <http://example.org/> . ex:s ex:p ex:o",   // missing '.'
        "@prefix ex: <http://example.org/> . ex:s ex:p \"x .",  // unterminated literal
        "@prefix ex: <http://example.org/> . ex:s ex:p ex:o . trailing",
        "@prefix ex: <http://example.org/> . \"lit\" ex:p ex:o .",
    };
    for (const char* doc : bad) {
        EXPECT_THROW(parse_turtle(doc), SyntaxError) << doc;
    }
}

TEST(TurtleParser, WholeDocumentRejectedOnLateError) {
    // Even with 2 valid statements first, nothing is returned.
    EXPECT_THROW(parse_turtle("@prefix ex: <http://e.org/> .\n"
                              "ex:a ex:p ex:b .\n"
                              "ex:c ex:p ex:d .\n"
                              "ex:e ex:p undefined:x .\n"),
                 SyntaxError);
}

TEST(TurtleParser, NumericAndBooleanShorthand) {
    Graph g = parse_turtle("@prefix ex: <http://e.org/> .\n"
                           "ex:s ex:i 42 ; ex:d 42.5 ; ex:t true ; ex:f false .");
    EXPECT_TRUE(g.contains(rdf::make_triple(
        Iri{"http://e.org/s"}, Iri{"http://e.org/i"},
        Literal::typed("42", Iri{rdf::vocab::xsd_integer}))));
    EXPECT_TRUE(g.contains(rdf::make_triple(
        Iri{"http://e.org/s"}, Iri{"http://e.org/d"},
        Literal::typed("42.5", Iri{rdf::vocab::xsd_decimal}))));
    EXPECT_TRUE(g.contains(rdf::make_triple(
        Iri{"http://e.org/s"}, Iri{"http://e.org/t"},
        Literal::typed("true", Iri{rdf::vocab::xsd_boolean}))));
    EXPECT_TRUE(g.contains(rdf::make_triple(
        Iri{"http://e.org/s"}, Iri{"http://e.org/f"},
        Literal::typed("false", Iri{rdf::vocab::xsd_boolean}))));
}

TEST(TurtleParser, IntegerThenStatementDot) {
    Graph g = parse_turtle("@prefix ex: <http://e.org/> . ex:s ex:p 42 . ex:s ex:q ex:o .");
    EXPECT_EQ(g.size(), 2u);
}

TEST(TurtleParser, PrefixRedefinitionUsesLatest) {
    Graph g = parse_turtle("@prefix ex: <http://one.org/> .\n"
                           "ex:s ex:p ex:o .\n"
                           "@prefix ex: <http://two.org/> .\n"
                           "ex:s ex:p ex:o .\n");
    EXPECT_EQ(g.size(), 2u);
    EXPECT_TRUE(g.contains(rdf::make_triple(Iri{"http://one.org/s"}, Iri{"http://one.org/p"},
                                            Iri{"http://one.org/o"})));
    EXPECT_TRUE(g.contains(rdf::make_triple(Iri{"http://two.org/s"}, Iri{"http://two.org/p"},
                                            Iri{"http://two.org/o"})));
}

TEST(TurtleParser, LanguageTagsNormalizeToLowercase) {
    Graph g = parse_turtle("@prefix ex: <http://e.org/> . ex:s ex:p \"colour\"@en-GB .");
    EXPECT_TRUE(g.contains(rdf::make_triple(Iri{"http://e.org/s"}, Iri{"http://e.org/p"},
                                            Literal::lang_tagged("colour", "en-gb"))));
}

TEST(TurtleParser, DuplicateTripleIsNoOp) {
    Graph g = parse_turtle("@prefix ex: <http://e.org/> . ex:s ex:p ex:o . ex:s ex:p ex:o .");
    EXPECT_EQ(g.size(), 1u);
}

// Frozen cross-check against an independent Turtle parser (see
// tests/data/turtle/make_golden.js).
TEST(TurtleParser, MatchesIndependentParserGoldens) {
    for (const char* name : {"basic", "literals", "numbers", "blanks"}) {
        auto dir = testsupport::test_data_dir() / "turtle";
        Graph g = parse_turtle(read_file(dir / (std::string(name) + ".ttl")));
        EXPECT_EQ(canonical_listing(g), read_file(dir / (std::string(name) + ".golden")))
            << "fixture: " << name;
    }
}

TEST(TurtleSerializer, EmptyGraph) {
    EXPECT_EQ(serialize_turtle(Graph{}), "");
    Graph g;
    g.set_prefix("ex", "http://example.org/");
    EXPECT_EQ(serialize_turtle(g), "@prefix ex: <http://example.org/> .\n");
}

TEST(TurtleSerializer, SharedSubjectUsesPredicateList) {
    Graph g;
    g.set_prefix("ex", "http://example.org/");
    g.insert(Iri{"http://example.org/s"}, Iri{rdf::vocab::rdf_type},
             Iri{"http://example.org/AC"});
    g.insert(Iri{"http://example.org/s"}, Iri{"http://example.org/brand"},
             Iri{"http://example.org/Arctix"});
    std::string expected =
        "@prefix ex: <http://example.org/> .\n"
        "\n"
        "ex:s a ex:AC ;\n"
        "    ex:brand ex:Arctix .\n";
    EXPECT_EQ(serialize_turtle(g), expected);
    EXPECT_EQ(parse_turtle(serialize_turtle(g)), g);
}

TEST(TurtleSerializer, DeterministicForEqualGraphs) {
    Graph a, b;
    a.set_prefix("ex", "http://example.org/");
    b.set_prefix("ex", "http://example.org/");
    // insertion order differs, output must not
    a.insert(Iri{"http://example.org/s1"}, Iri{"http://example.org/p"}, Literal::plain("x"));
    a.insert(Iri{"http://example.org/s2"}, Iri{"http://example.org/p"}, Literal::plain("y"));
    b.insert(Iri{"http://example.org/s2"}, Iri{"http://example.org/p"}, Literal::plain("y"));
    b.insert(Iri{"http://example.org/s1"}, Iri{"http://example.org/p"}, Literal::plain("x"));
    EXPECT_EQ(a, b);
    EXPECT_EQ(serialize_turtle(a), serialize_turtle(b));
}

TEST(TurtleSerializer, FallsBackToAngleBracketsWhenLocalNameInvalid) {
    Graph g;
    g.set_prefix("ex", "http://example.org/");
    g.insert(Iri{"http://example.org/has.dot"}, Iri{"http://example.org/p"},
             Iri{"http://example.org/1digit"});
    std::string out = serialize_turtle(g);
    EXPECT_NE(out.find("<http://example.org/has.dot>"), std::string::npos);
    EXPECT_NE(out.find("<http://example.org/1digit>"), std::string::npos);
    EXPECT_EQ(parse_turtle(out), g);
}

TEST(TurtleRoundTrip, RandomGraphs) {
    for (uint64_t seed = 0; seed < 200; ++seed) {
        testsupport::Gen gen(seed);
        Graph g = gen.graph();
        Graph back = parse_turtle(serialize_turtle(g));
        ASSERT_EQ(back, g) << "seed " << seed << "\n" << serialize_turtle(g);
    }
}

TEST(GraphUnion, BasicLaws) {
    testsupport::Gen gen(7);
    Graph g = gen.graph();
    Graph empty;
    EXPECT_EQ(graph_union(g, empty), g);
    EXPECT_EQ(graph_union(empty, g), g);
    EXPECT_EQ(graph_union(g, g), g);
}
