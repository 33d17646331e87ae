#include <gtest/gtest.h>

#include "kgforge/rdf/graph.hpp"
#include "kgforge/rdf/turtle.hpp"
#include "support/generators.hpp"

using namespace kgforge;
using rdf::Graph;
using rdf::Iri;

TEST(Graph, SetSemantics) {
    Graph g;
    g.insert(Iri{"http://e.org/s"}, Iri{"http://e.org/p"}, Iri{"http://e.org/o"});
    g.insert(Iri{"http://e.org/s"}, Iri{"http://e.org/p"}, Iri{"http://e.org/o"});
    EXPECT_EQ(g.size(), 1u);
}

TEST(Graph, RejectsLiteralSubject) {
    Graph g;
    EXPECT_THROW(g.insert(rdf::Literal::plain("x"), Iri{"http://e.org/p"}, Iri{"http://e.org/o"}),
                 std::invalid_argument);
}

TEST(Graph, EqualityIgnoresPrefixes) {
    Graph a, b;
    a.set_prefix("ex", "http://e.org/");
    a.insert(Iri{"http://e.org/s"}, Iri{"http://e.org/p"}, Iri{"http://e.org/o"});
    b.insert(Iri{"http://e.org/s"}, Iri{"http://e.org/p"}, Iri{"http://e.org/o"});
    EXPECT_EQ(a, b);
}

TEST(GraphUnion, MergesTriples) {
    Graph a, b;
    a.insert(Iri{"http://e.org/s"}, Iri{"http://e.org/p"}, Iri{"http://e.org/o1"});
    b.insert(Iri{"http://e.org/s"}, Iri{"http://e.org/p"}, Iri{"http://e.org/o2"});
    Graph u = graph_union(a, b);
    EXPECT_EQ(u.size(), 2u);
}

TEST(GraphUnion, PrefixConflictRenamesWithNumericSuffix) {
    Graph a, b;
    a.set_prefix("ex", "http://one.org/");
    b.set_prefix("ex", "http://two.org/");
    Graph u = graph_union(a, b);
    EXPECT_EQ(u.prefixes().at("ex"), "http://one.org/");
    EXPECT_EQ(u.prefixes().at("ex2"), "http://two.org/");

    Graph c;
    c.set_prefix("ex", "http://three.org/");
    Graph u2 = graph_union(u, c);
    EXPECT_EQ(u2.prefixes().at("ex3"), "http://three.org/");
}

TEST(GraphUnion, SameNamespaceSameLabelIsNoConflict) {
    Graph a, b;
    a.set_prefix("ex", "http://e.org/");
    b.set_prefix("ex", "http://e.org/");
    Graph u = graph_union(a, b);
    EXPECT_EQ(u.prefixes().size(), 1u);
}

TEST(GraphUnion, AlgebraicLaws) {
    for (uint64_t seed = 100; seed < 140; ++seed) {
        testsupport::Gen gen(seed);
        Graph a = gen.graph(12);
        Graph b = gen.graph(12);
        Graph c = gen.graph(12);
        EXPECT_EQ(graph_union(a, b), graph_union(b, a)) << seed;
        EXPECT_EQ(graph_union(graph_union(a, b), c), graph_union(a, graph_union(b, c))) << seed;
        EXPECT_EQ(graph_union(a, a), a) << seed;

        // union size bound and containment
        Graph u = graph_union(a, b);
        EXPECT_LE(u.size(), a.size() + b.size());
        for (const auto& t : a.triples()) EXPECT_TRUE(u.contains(t));
        for (const auto& t : b.triples()) EXPECT_TRUE(u.contains(t));
    }
}
