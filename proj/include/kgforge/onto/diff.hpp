#pragma once
// Field-level ontology diff; makes refinement effects auditable.

#include <string>
#include <vector>

#include "kgforge/onto/model.hpp"

namespace kgforge::onto {

struct FieldChange {
    std::string field;
    std::string old_value;
    std::string new_value;

    friend bool operator==(const FieldChange&, const FieldChange&) = default;
};

struct ChangedElement {
    Iri iri;
    std::vector<FieldChange> changes;

    friend bool operator==(const ChangedElement&, const ChangedElement&) = default;
};

struct DiffReport {
    std::vector<Iri> added_classes;
    std::vector<Iri> removed_classes;
    std::vector<ChangedElement> changed_classes;
    std::vector<Iri> added_properties;
    std::vector<Iri> removed_properties;
    std::vector<ChangedElement> changed_properties;

    bool empty() const {
        return added_classes.empty() && removed_classes.empty() && changed_classes.empty() &&
               added_properties.empty() && removed_properties.empty() &&
               changed_properties.empty();
    }
    size_t added_count() const { return added_classes.size() + added_properties.size(); }
    size_t removed_count() const { return removed_classes.size() + removed_properties.size(); }

    friend bool operator==(const DiffReport&, const DiffReport&) = default;
};

namespace detail {

inline std::string join_parents(const std::set<Iri>& parents) {
    std::string out;
    for (const Iri& p : parents) {
        if (!out.empty()) out += " ";
        out += p.value;
    }
    return out;
}

inline std::vector<FieldChange> class_changes(const OntologyClass& a, const OntologyClass& b) {
    std::vector<FieldChange> changes;
    if (a.label != b.label) changes.push_back({"label", a.label, b.label});
    if (a.comment != b.comment) changes.push_back({"comment", a.comment, b.comment});
    if (a.parents != b.parents) {
        changes.push_back({"parents", join_parents(a.parents), join_parents(b.parents)});
    }
    return changes;
}

inline std::vector<FieldChange> property_changes(const OntologyProperty& a,
                                                 const OntologyProperty& b) {
    auto iri_or_empty = [](const std::optional<Iri>& v) { return v ? v->value : std::string(); };
    std::vector<FieldChange> changes;
    if (a.kind != b.kind) changes.push_back({"kind", to_string(a.kind), to_string(b.kind)});
    if (a.domain != b.domain) {
        changes.push_back({"domain", iri_or_empty(a.domain), iri_or_empty(b.domain)});
    }
    if (a.range != b.range) {
        changes.push_back({"range", iri_or_empty(a.range), iri_or_empty(b.range)});
    }
    if (a.label != b.label) changes.push_back({"label", a.label, b.label});
    if (a.comment != b.comment) changes.push_back({"comment", a.comment, b.comment});
    return changes;
}

}  // namespace detail

/// Structural diff from `old_onto` to `new_onto`. Every element of either
/// side lands in exactly one of added/removed/changed/unchanged; swapping
/// the arguments swaps added and removed.
inline DiffReport ontology_diff(const Ontology& old_onto, const Ontology& new_onto) {
    DiffReport report;
    for (const auto& [iri, cls] : old_onto.classes) {
        auto it = new_onto.classes.find(iri);
        if (it == new_onto.classes.end()) {
            report.removed_classes.push_back(iri);
        } else if (!(cls == it->second)) {
            report.changed_classes.push_back({iri, detail::class_changes(cls, it->second)});
        }
    }
    for (const auto& [iri, cls] : new_onto.classes) {
        if (!old_onto.has_class(iri)) report.added_classes.push_back(iri);
    }
    for (const auto& [iri, prop] : old_onto.properties) {
        auto it = new_onto.properties.find(iri);
        if (it == new_onto.properties.end()) {
            report.removed_properties.push_back(iri);
        } else if (!(prop == it->second)) {
            report.changed_properties.push_back({iri, detail::property_changes(prop, it->second)});
        }
    }
    for (const auto& [iri, prop] : new_onto.properties) {
        if (!old_onto.has_property(iri)) report.added_properties.push_back(iri);
    }
    return report;
}

}  // namespace kgforge::onto
