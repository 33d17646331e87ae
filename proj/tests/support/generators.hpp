#pragma once
// Seeded random generators for property tests: graphs within the Turtle
// subset and ontology pairs for merge/diff laws.

#include <random>
#include <string>
#include <vector>

#include "kgforge/onto/model.hpp"
#include "kgforge/rdf/graph.hpp"
#include "kgforge/rdf/vocab.hpp"

namespace kgforge::testsupport {

class Gen {
public:
    explicit Gen(uint64_t seed) : rng_(seed) {}

    size_t below(size_t n) { return n == 0 ? 0 : static_cast<size_t>(rng_() % n); }
    bool chance(int percent) { return static_cast<int>(rng_() % 100) < percent; }

    std::string identifier(size_t max_len = 10) {
        static const char alphabet[] = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
        std::string out;
        size_t len = 1 + below(max_len);
        out.push_back(alphabet[below(sizeof(alphabet) - 1)]);
        static const char rest[] =
            "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_-";
        for (size_t i = 1; i < len; ++i) out.push_back(rest[below(sizeof(rest) - 1)]);
        return out;
    }

    rdf::Iri iri() {
        static const char* bases[] = {"http://example.org/", "http://shop.test/catalog#",
                                      "urn:kg:"};
        return rdf::Iri{std::string(bases[below(3)]) + identifier()};
    }

    rdf::Literal literal() {
        switch (below(5)) {
            case 0: {  // text with characters the escaper must handle
                std::string s = identifier();
                if (chance(30)) s += " \"quoted\"\n\ttail \\ done";
                if (chance(20)) s += " µ—ünïcode";
                return rdf::Literal::plain(s);
            }
            case 1: return rdf::Literal::typed(std::to_string(static_cast<long>(rng_() % 100000)),
                                               rdf::Iri{rdf::vocab::xsd_integer});
            case 2: {
                std::string lex = std::to_string(rng_() % 1000) + "." +
                                  std::to_string(rng_() % 1000);
                return rdf::Literal::typed(lex, rdf::Iri{rdf::vocab::xsd_decimal});
            }
            case 3: return rdf::Literal::typed(chance(50) ? "true" : "false",
                                               rdf::Iri{rdf::vocab::xsd_boolean});
            default:
                return chance(50) ? rdf::Literal::lang_tagged(identifier(), chance(50) ? "en" : "de-DE")
                                  : rdf::Literal::typed(identifier(), iri());
        }
    }

    rdf::Term subject() {
        if (chance(20)) return rdf::BlankNode{"b" + std::to_string(below(8))};
        return iri();
    }

    rdf::Term object() {
        size_t pick = below(10);
        if (pick < 4) return iri();
        if (pick < 5) return rdf::BlankNode{"b" + std::to_string(below(8))};
        return literal();
    }

    rdf::Graph graph(size_t max_triples = 30) {
        rdf::Graph g;
        if (chance(70)) g.set_prefix("ex", "http://example.org/");
        if (chance(40)) g.set_prefix("cat", "http://shop.test/catalog#");
        if (chance(30)) g.set_prefix("xsd", std::string(rdf::vocab::XSD));
        size_t n = below(max_triples + 1);
        for (size_t i = 0; i < n; ++i) {
            rdf::Iri pred = chance(15) ? rdf::Iri{rdf::vocab::rdf_type} : iri();
            rdf::Term obj = pred.value == rdf::vocab::rdf_type ? rdf::Term{iri()} : object();
            g.insert(subject(), pred, obj);
        }
        return g;
    }

    onto::Ontology ontology(const std::string& ns, size_t max_classes = 8,
                            size_t max_properties = 12) {
        onto::Ontology o;
        o.namespace_iri = ns;
        size_t n_classes = 1 + below(max_classes);
        std::vector<onto::Iri> class_iris;
        for (size_t i = 0; i < n_classes; ++i) {
            onto::Iri iri{ns + "C" + std::to_string(i) + identifier(4)};
            onto::OntologyClass cls;
            cls.iri = iri;
            if (chance(70)) cls.label = identifier();
            if (chance(70)) cls.comment = "class " + identifier();
            // parents only point backward, keeping the hierarchy acyclic
            if (!class_iris.empty() && chance(50)) {
                cls.parents.insert(class_iris[below(class_iris.size())]);
            }
            class_iris.push_back(iri);
            o.classes[iri] = std::move(cls);
        }
        size_t n_props = below(max_properties + 1);
        for (size_t i = 0; i < n_props; ++i) {
            onto::Iri iri{ns + "p" + std::to_string(i) + identifier(4)};
            onto::OntologyProperty prop;
            prop.iri = iri;
            prop.kind = chance(40) ? onto::PropertyKind::Datatype : onto::PropertyKind::Object;
            if (chance(80)) prop.domain = class_iris[below(class_iris.size())];
            if (prop.kind == onto::PropertyKind::Datatype) {
                if (chance(80)) {
                    static const char* dts[] = {"integer", "decimal", "boolean", "string"};
                    prop.range = onto::Iri{rdf::vocab::xsd(dts[below(4)])};
                }
            } else if (chance(80)) {
                prop.range = class_iris[below(class_iris.size())];
            }
            if (chance(70)) prop.label = identifier();
            if (chance(70)) prop.comment = "value format: " + identifier();
            o.properties[iri] = std::move(prop);
        }
        return o;
    }

    std::mt19937_64& rng() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace kgforge::testsupport
