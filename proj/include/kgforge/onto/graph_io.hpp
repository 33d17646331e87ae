#pragma once
// Lifting an RDF graph into an Ontology and lowering it back. The two
// directions round-trip exactly on valid ontologies.

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "kgforge/onto/model.hpp"
#include "kgforge/rdf/graph.hpp"
#include "kgforge/rdf/vocab.hpp"

namespace kgforge::onto {

namespace vocab = rdf::vocab;

struct StructureError : std::runtime_error {
    explicit StructureError(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {

inline std::string namespace_of(const std::string& iri) {
    size_t cut = iri.find_last_of("#/");
    if (cut == std::string::npos) return iri;
    return iri.substr(0, cut + 1);
}

// Subclass cycle detection over the declared class set.
inline bool find_subclass_cycle(const Ontology& o, std::vector<Iri>* cycle_out) {
    enum class Mark { White, Grey, Black };
    std::map<Iri, Mark> marks;
    for (const auto& [iri, cls] : o.classes) marks[iri] = Mark::White;

    std::vector<Iri> stack;
    auto dfs = [&](auto&& self, const Iri& node) -> bool {
        marks[node] = Mark::Grey;
        stack.push_back(node);
        auto it = o.classes.find(node);
        if (it != o.classes.end()) {
            for (const Iri& parent : it->second.parents) {
                auto mk = marks.find(parent);
                if (mk == marks.end()) continue;  // external parent
                if (mk->second == Mark::Grey) {
                    if (cycle_out) {
                        *cycle_out = stack;
                        cycle_out->push_back(parent);
                    }
                    return true;
                }
                if (mk->second == Mark::White && self(self, parent)) return true;
            }
        }
        marks[node] = Mark::Black;
        stack.pop_back();
        return false;
    };
    for (const auto& [iri, cls] : o.classes) {
        if (marks[iri] == Mark::White && dfs(dfs, iri)) return true;
    }
    return false;
}

}  // namespace detail

/// Lifts a parsed graph into an Ontology. Subjects typed rdfs:Class or
/// owl:Class become classes; subjects typed rdf:Property,
/// owl:DatatypeProperty or owl:ObjectProperty become properties, with the
/// kind inferred from the range namespace when only rdf:Property is given.
/// Missing annotations and dangling references are reported as issues.
/// Throws StructureError when the subclass graph contains a cycle.
inline std::pair<Ontology, std::vector<OntologyIssue>> ontology_from_graph(const rdf::Graph& g) {
    Ontology o;
    std::vector<OntologyIssue> issues;

    // First pass: collect typed subjects. Only IRI subjects form schema
    // elements; blank nodes are outside the subset the stages emit.
    std::set<Iri> class_iris;
    std::map<Iri, std::optional<PropertyKind>> property_iris;
    for (const auto& t : g.triples()) {
        if (t.predicate.value != vocab::rdf_type || !rdf::is_iri(t.subject) ||
            !rdf::is_iri(t.object)) {
            continue;
        }
        const Iri& subject = rdf::as_iri(t.subject);
        const std::string& type = rdf::as_iri(t.object).value;
        if (type == vocab::rdfs_class || type == vocab::owl_class) {
            class_iris.insert(subject);
        } else if (type == vocab::owl_datatype_property) {
            property_iris[subject] = PropertyKind::Datatype;
        } else if (type == vocab::owl_object_property) {
            property_iris[subject] = PropertyKind::Object;
        } else if (type == vocab::rdf_property) {
            property_iris.emplace(subject, std::nullopt);  // kind inferred later
        } else if (type == vocab::owl_ontology) {
            o.namespace_iri = subject.value;
        }
    }

    for (const Iri& iri : class_iris) o.classes[iri] = OntologyClass{iri, "", "", {}};
    for (const auto& [iri, kind] : property_iris) {
        OntologyProperty p;
        p.iri = iri;
        p.kind = kind.value_or(PropertyKind::Object);
        o.properties[iri] = p;
    }

    // Second pass: map annotation and structure predicates onto fields.
    // When a subject repeats an annotation the lexically smallest value wins,
    // keeping the lift deterministic.
    auto smaller = [](std::string& slot, const std::string& candidate) {
        if (slot.empty() || candidate < slot) slot = candidate;
    };
    auto smaller_iri = [](std::optional<Iri>& slot, const Iri& candidate) {
        if (!slot || candidate < *slot) slot = candidate;
    };
    for (const auto& t : g.triples()) {
        if (!rdf::is_iri(t.subject)) continue;
        const Iri& subject = rdf::as_iri(t.subject);
        const std::string& pred = t.predicate.value;

        auto cls = o.classes.find(subject);
        auto prop = o.properties.find(subject);

        if (pred == vocab::rdfs_sub_class_of && cls != o.classes.end()) {
            if (rdf::is_iri(t.object)) {
                cls->second.parents.insert(rdf::as_iri(t.object));
            } else {
                issues.push_back(make_issue(subject, IssueCode::DanglingReference,
                                            "superclass must be an IRI"));
            }
        } else if (pred == vocab::rdfs_label || pred == vocab::rdfs_comment) {
            if (!rdf::is_literal(t.object)) continue;
            const std::string& text = rdf::as_literal(t.object).lexical;
            if (cls != o.classes.end()) {
                smaller(pred == vocab::rdfs_label ? cls->second.label : cls->second.comment, text);
            }
            if (prop != o.properties.end()) {
                smaller(pred == vocab::rdfs_label ? prop->second.label : prop->second.comment,
                        text);
            }
        } else if (pred == vocab::rdfs_domain && prop != o.properties.end()) {
            if (rdf::is_iri(t.object)) {
                smaller_iri(prop->second.domain, rdf::as_iri(t.object));
            } else {
                issues.push_back(
                    make_issue(subject, IssueCode::DanglingReference, "domain must be an IRI"));
            }
        } else if (pred == vocab::rdfs_range && prop != o.properties.end()) {
            if (rdf::is_iri(t.object)) {
                smaller_iri(prop->second.range, rdf::as_iri(t.object));
            } else {
                issues.push_back(
                    make_issue(subject, IssueCode::DanglingReference, "range must be an IRI"));
            }
        }
    }

    // Infer the kind of plain rdf:Property declarations from the range
    // namespace: xsd means a datatype property, anything else stays object.
    for (auto& [iri, kind] : property_iris) {
        if (kind.has_value()) continue;
        OntologyProperty& p = o.properties[iri];
        if (p.range && vocab::in_namespace(p.range->value, vocab::XSD)) {
            p.kind = PropertyKind::Datatype;
        }
    }

    if (o.namespace_iri.empty() && !(o.classes.empty() && o.properties.empty())) {
        // No explicit ontology declaration: take the most common element
        // namespace (smallest wins ties).
        std::map<std::string, size_t> counts;
        for (const auto& [iri, cls] : o.classes) ++counts[detail::namespace_of(iri.value)];
        for (const auto& [iri, prop] : o.properties) ++counts[detail::namespace_of(iri.value)];
        size_t best = 0;
        for (const auto& [ns, n] : counts) {
            if (n > best) {
                best = n;
                o.namespace_iri = ns;
            }
        }
    }

    // Annotation and reference issues.
    for (const auto& [iri, cls] : o.classes) {
        if (cls.comment.empty()) {
            issues.push_back(make_issue(iri, IssueCode::MissingComment, "class has no rdfs:comment"));
        }
        for (const Iri& parent : cls.parents) {
            if (!o.has_class(parent) && !vocab::is_builtin_namespace(parent.value)) {
                issues.push_back(make_issue(iri, IssueCode::DanglingReference,
                                            "superclass " + parent.value + " is not declared"));
            }
        }
    }
    for (const auto& [iri, prop] : o.properties) {
        if (!prop.domain) {
            issues.push_back(make_issue(iri, IssueCode::MissingDomain, "property has no rdfs:domain"));
        } else if (!o.has_class(*prop.domain) && !vocab::is_builtin_namespace(prop.domain->value)) {
            issues.push_back(make_issue(iri, IssueCode::DanglingReference,
                                        "domain " + prop.domain->value + " is not declared"));
        }
        if (!prop.range) {
            issues.push_back(make_issue(iri, IssueCode::MissingRange, "property has no rdfs:range"));
        } else if (!o.has_class(*prop.range) && !vocab::is_builtin_namespace(prop.range->value)) {
            issues.push_back(make_issue(iri, IssueCode::DanglingReference,
                                        "range " + prop.range->value + " is not declared"));
        }
        if (prop.comment.empty()) {
            issues.push_back(
                make_issue(iri, IssueCode::MissingComment, "property has no rdfs:comment"));
        }
    }

    std::vector<Iri> cycle;
    if (detail::find_subclass_cycle(o, &cycle)) {
        std::string path;
        for (const Iri& step : cycle) {
            if (!path.empty()) path += " -> ";
            path += step.value;
        }
        throw StructureError("subclass cycle: " + path);
    }

    std::sort(issues.begin(), issues.end());
    issues.erase(std::unique(issues.begin(), issues.end()), issues.end());
    return {std::move(o), std::move(issues)};
}

/// Lowers an Ontology back to a graph with explicit owl typing, ready to be
/// serialized into prompts or persisted as ontology.ttl.
inline rdf::Graph ontology_to_graph(const Ontology& o) {
    using rdf::Iri;
    using rdf::Literal;
    rdf::Graph g;
    if (o.empty() && o.namespace_iri.empty()) return g;

    if (!o.namespace_iri.empty()) g.set_prefix("", o.namespace_iri);
    g.set_prefix("rdfs", std::string(vocab::RDFS));
    g.set_prefix("owl", std::string(vocab::OWL));
    g.set_prefix("xsd", std::string(vocab::XSD));

    const Iri type{vocab::rdf_type};
    if (!o.namespace_iri.empty()) {
        g.insert(Iri{o.namespace_iri}, type, Iri{vocab::owl_ontology});
    }
    for (const auto& [iri, cls] : o.classes) {
        g.insert(iri, type, Iri{vocab::owl_class});
        for (const Iri& parent : cls.parents) {
            g.insert(iri, Iri{vocab::rdfs_sub_class_of}, parent);
        }
        if (!cls.label.empty()) g.insert(iri, Iri{vocab::rdfs_label}, Literal::plain(cls.label));
        if (!cls.comment.empty()) {
            g.insert(iri, Iri{vocab::rdfs_comment}, Literal::plain(cls.comment));
        }
    }
    for (const auto& [iri, prop] : o.properties) {
        g.insert(iri, type,
                 Iri{prop.kind == PropertyKind::Datatype ? vocab::owl_datatype_property
                                                         : vocab::owl_object_property});
        if (prop.domain) g.insert(iri, Iri{vocab::rdfs_domain}, *prop.domain);
        if (prop.range) g.insert(iri, Iri{vocab::rdfs_range}, *prop.range);
        if (!prop.label.empty()) g.insert(iri, Iri{vocab::rdfs_label}, Literal::plain(prop.label));
        if (!prop.comment.empty()) {
            g.insert(iri, Iri{vocab::rdfs_comment}, Literal::plain(prop.comment));
        }
    }
    return g;
}

}  // namespace kgforge::onto
