#pragma once
// RDF terms: IRIs, blank nodes, literals, and the triple built from them.
// Plain value types with strict ordering so graphs can use set semantics.

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <variant>

#include "kgforge/rdf/vocab.hpp"

namespace kgforge::rdf {

struct Iri {
    std::string value;

    Iri() = default;
    explicit Iri(std::string v) : value(std::move(v)) {}

    friend bool operator==(const Iri&, const Iri&) = default;
    friend auto operator<=>(const Iri&, const Iri&) = default;
};

// Absolute IRI: non-empty, has a scheme separator, no whitespace or angle
// brackets.
inline bool is_valid_iri(std::string_view v) {
    if (v.empty()) return false;
    if (v.find(':') == std::string_view::npos) return false;
    for (char c : v) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '<' || c == '>') return false;
    }
    return true;
}

struct BlankNode {
    std::string label;

    BlankNode() = default;
    explicit BlankNode(std::string l) : label(std::move(l)) {}

    friend bool operator==(const BlankNode&, const BlankNode&) = default;
    friend auto operator<=>(const BlankNode&, const BlankNode&) = default;
};

inline bool is_valid_blank_label(std::string_view v) {
    if (v.empty()) return false;
    for (char c : v) {
        bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                  c == '_';
        if (!ok) return false;
    }
    return true;
}

// A literal keeps its lexical form verbatim. A set language tag implies
// datatype rdf:langString.
struct Literal {
    std::string lexical;
    Iri datatype{vocab::xsd_string};
    std::string language;  // empty = no tag

    Literal() = default;

    static Literal plain(std::string lexical) {
        Literal l;
        l.lexical = std::move(lexical);
        return l;
    }
    static Literal typed(std::string lexical, Iri datatype) {
        Literal l;
        l.lexical = std::move(lexical);
        l.datatype = std::move(datatype);
        return l;
    }
    // Tags normalize to lowercase, per RDF 1.1 literal term equality.
    static Literal lang_tagged(std::string lexical, std::string tag) {
        Literal l;
        l.lexical = std::move(lexical);
        l.datatype = Iri{vocab::rdf_lang_string};
        for (char& c : tag) {
            if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        }
        l.language = std::move(tag);
        return l;
    }

    friend bool operator==(const Literal&, const Literal&) = default;
    friend auto operator<=>(const Literal& a, const Literal& b) {
        return std::tie(a.lexical, a.datatype.value, a.language) <=>
               std::tie(b.lexical, b.datatype.value, b.language);
    }
};

// BCP47 shape: alpha primary subtag, alphanumeric subtags joined by '-'.
inline bool is_valid_language_tag(std::string_view v) {
    if (v.empty()) return false;
    bool first_subtag = true;
    size_t subtag_len = 0;
    for (char c : v) {
        if (c == '-') {
            if (subtag_len == 0) return false;
            first_subtag = false;
            subtag_len = 0;
            continue;
        }
        bool alpha = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
        bool digit = (c >= '0' && c <= '9');
        if (first_subtag ? !alpha : !(alpha || digit)) return false;
        if (++subtag_len > 8) return false;
    }
    return subtag_len > 0;
}

using Term = std::variant<Iri, BlankNode, Literal>;

inline bool is_iri(const Term& t) { return std::holds_alternative<Iri>(t); }
inline bool is_blank(const Term& t) { return std::holds_alternative<BlankNode>(t); }
inline bool is_literal(const Term& t) { return std::holds_alternative<Literal>(t); }

inline const Iri& as_iri(const Term& t) { return std::get<Iri>(t); }
inline const BlankNode& as_blank(const Term& t) { return std::get<BlankNode>(t); }
inline const Literal& as_literal(const Term& t) { return std::get<Literal>(t); }

struct Triple {
    Term subject;  // Iri or BlankNode, never Literal
    Iri predicate;
    Term object;

    friend bool operator==(const Triple&, const Triple&) = default;
    friend bool operator<(const Triple& a, const Triple& b) {
        return std::tie(a.subject, a.predicate, a.object) <
               std::tie(b.subject, b.predicate, b.object);
    }
};

inline Triple make_triple(Term subject, Iri predicate, Term object) {
    if (is_literal(subject)) throw std::invalid_argument("triple subject must not be a literal");
    return Triple{std::move(subject), std::move(predicate), std::move(object)};
}

}  // namespace kgforge::rdf
