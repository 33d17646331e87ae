#pragma once
// In-memory RDF graph: a set of triples plus a cosmetic prefix map.
// Triples are deduplicated; equality ignores prefixes.

#include <map>
#include <set>
#include <string>

#include "kgforge/rdf/term.hpp"

namespace kgforge::rdf {

class Graph {
public:
    using TripleSet = std::set<Triple>;

    // Inserting a duplicate is a no-op. Literal subjects are rejected.
    void insert(Triple t) {
        if (is_literal(t.subject)) {
            throw std::invalid_argument("triple subject must not be a literal");
        }
        triples_.insert(std::move(t));
    }
    void insert(Term subject, Iri predicate, Term object) {
        insert(make_triple(std::move(subject), std::move(predicate), std::move(object)));
    }

    bool contains(const Triple& t) const { return triples_.count(t) > 0; }
    size_t size() const { return triples_.size(); }
    bool empty() const { return triples_.empty(); }

    const TripleSet& triples() const { return triples_; }

    // Later declarations of the same label overwrite, matching Turtle
    // redefinition semantics.
    void set_prefix(const std::string& label, const std::string& namespace_iri) {
        prefixes_[label] = namespace_iri;
    }
    const std::map<std::string, std::string>& prefixes() const { return prefixes_; }

    // Graph equality is set equality on triples; prefix maps are cosmetic.
    friend bool operator==(const Graph& a, const Graph& b) { return a.triples_ == b.triples_; }
    friend bool operator!=(const Graph& a, const Graph& b) { return !(a == b); }

private:
    TripleSet triples_;
    std::map<std::string, std::string> prefixes_;
};

// Set union of triples. Prefix maps merge; when the same label maps to a
// different namespace in `b`, b's entry is re-labelled with the smallest
// numeric suffix that is free. Nothing is rewritten: triples carry full IRIs.
inline Graph graph_union(const Graph& a, const Graph& b) {
    Graph out = a;
    for (const auto& t : b.triples()) out.insert(t);
    for (const auto& [label, ns] : b.prefixes()) {
        auto it = out.prefixes().find(label);
        if (it == out.prefixes().end()) {
            out.set_prefix(label, ns);
        } else if (it->second != ns) {
            for (int suffix = 2;; ++suffix) {
                std::string candidate = label + std::to_string(suffix);
                auto jt = out.prefixes().find(candidate);
                if (jt == out.prefixes().end()) {
                    out.set_prefix(candidate, ns);
                    break;
                }
                if (jt->second == ns) break;  // already present under this alias
            }
        }
    }
    return out;
}

}  // namespace kgforge::rdf
