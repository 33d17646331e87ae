#pragma once
// Typed schema view over an RDF graph: classes and properties with their
// domains, ranges and annotations. Values are immutable after construction;
// merge/diff produce new values.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kgforge/rdf/term.hpp"

namespace kgforge::onto {

using rdf::Iri;

enum class PropertyKind { Datatype, Object };

inline const char* to_string(PropertyKind k) {
    return k == PropertyKind::Datatype ? "datatype" : "object";
}

struct OntologyClass {
    Iri iri;
    std::string label;    // empty = absent
    std::string comment;  // empty = absent
    std::set<Iri> parents;

    friend bool operator==(const OntologyClass&, const OntologyClass&) = default;
};

struct OntologyProperty {
    Iri iri;
    PropertyKind kind = PropertyKind::Object;
    std::optional<Iri> domain;
    std::optional<Iri> range;
    std::string label;
    std::string comment;  // expected value format and units

    friend bool operator==(const OntologyProperty&, const OntologyProperty&) = default;
};

struct Ontology {
    std::map<Iri, OntologyClass> classes;
    std::map<Iri, OntologyProperty> properties;
    std::string namespace_iri;  // base namespace for minted schema terms; may be empty

    bool has_class(const Iri& iri) const { return classes.count(iri) > 0; }
    bool has_property(const Iri& iri) const { return properties.count(iri) > 0; }
    bool empty() const { return classes.empty() && properties.empty(); }

    friend bool operator==(const Ontology&, const Ontology&) = default;
};

enum class Severity { Error, Warning };

enum class IssueCode {
    MissingDomain,
    MissingRange,
    MissingComment,
    DanglingReference,
    SubclassCycle,
    DuplicateLabel,
    NearDuplicateProperty,
};

inline const char* to_string(IssueCode c) {
    switch (c) {
        case IssueCode::MissingDomain: return "missing-domain";
        case IssueCode::MissingRange: return "missing-range";
        case IssueCode::MissingComment: return "missing-comment";
        case IssueCode::DanglingReference: return "dangling-reference";
        case IssueCode::SubclassCycle: return "subclass-cycle";
        case IssueCode::DuplicateLabel: return "duplicate-label";
        case IssueCode::NearDuplicateProperty: return "near-duplicate-property";
    }
    return "unknown";
}

// Cycles and dangling references are errors; everything else warns.
inline Severity severity_of(IssueCode c) {
    switch (c) {
        case IssueCode::DanglingReference:
        case IssueCode::SubclassCycle: return Severity::Error;
        default: return Severity::Warning;
    }
}

struct OntologyIssue {
    Severity severity;
    Iri subject;
    IssueCode code;
    std::string message;

    friend bool operator==(const OntologyIssue&, const OntologyIssue&) = default;
    friend bool operator<(const OntologyIssue& a, const OntologyIssue& b) {
        return std::tie(a.severity, a.subject, a.code, a.message) <
               std::tie(b.severity, b.subject, b.code, b.message);
    }
};

inline OntologyIssue make_issue(Iri subject, IssueCode code, std::string message) {
    return OntologyIssue{severity_of(code), std::move(subject), code, std::move(message)};
}

struct OntologyStats {
    size_t classes = 0;
    size_t properties = 0;
    size_t datatype_properties = 0;
    size_t object_properties = 0;
    double annotated_fraction = 0.0;  // elements with a non-empty comment

    friend bool operator==(const OntologyStats&, const OntologyStats&) = default;
};

inline OntologyStats ontology_stats(const Ontology& o) {
    OntologyStats s;
    s.classes = o.classes.size();
    s.properties = o.properties.size();
    size_t annotated = 0;
    for (const auto& [iri, cls] : o.classes) {
        if (!cls.comment.empty()) ++annotated;
    }
    for (const auto& [iri, prop] : o.properties) {
        if (prop.kind == PropertyKind::Datatype) ++s.datatype_properties;
        else ++s.object_properties;
        if (!prop.comment.empty()) ++annotated;
    }
    size_t total = s.classes + s.properties;
    s.annotated_fraction = total == 0 ? 0.0 : static_cast<double>(annotated) / total;
    return s;
}

}  // namespace kgforge::onto
