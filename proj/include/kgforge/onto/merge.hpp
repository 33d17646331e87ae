#pragma once
// Monotonic ontology merge: base elements are never removed or structurally
// altered. Delta may add new elements and fill empty annotations.

#include <string>
#include <vector>

#include "kgforge/onto/model.hpp"

namespace kgforge::onto {

struct AnnotationUpdate {
    Iri subject;
    std::string field;  // "label" or "comment"
    std::string old_value;
    std::string new_value;

    friend bool operator==(const AnnotationUpdate&, const AnnotationUpdate&) = default;
};

struct MergeReport {
    std::vector<Iri> added_classes;
    std::vector<Iri> added_properties;
    std::vector<AnnotationUpdate> annotation_updates;
    // Delta elements whose structural fields (kind/domain/range/parents)
    // disagreed with base; base's values stand.
    std::vector<Iri> rejected_changes;

    bool empty() const {
        return added_classes.empty() && added_properties.empty() && annotation_updates.empty() &&
               rejected_changes.empty();
    }
    size_t added_count() const { return added_classes.size() + added_properties.size(); }

    friend bool operator==(const MergeReport&, const MergeReport&) = default;
};

/// Merges `delta` into `base` without removing or altering existing
/// elements. New elements are added; for elements present in both, base's
/// structural fields win and only empty base annotations are filled from
/// delta. Conflicts are reported, never raised.
inline std::pair<Ontology, MergeReport> ontology_merge(const Ontology& base,
                                                       const Ontology& delta) {
    Ontology out = base;
    MergeReport report;

    auto fill_annotation = [&](const Iri& iri, const char* field, std::string& slot,
                               const std::string& candidate) {
        if (slot.empty() && !candidate.empty()) {
            report.annotation_updates.push_back(AnnotationUpdate{iri, field, slot, candidate});
            slot = candidate;
        }
    };

    for (const auto& [iri, delta_cls] : delta.classes) {
        auto it = out.classes.find(iri);
        if (it == out.classes.end()) {
            out.classes[iri] = delta_cls;
            report.added_classes.push_back(iri);
            continue;
        }
        OntologyClass& cls = it->second;
        if (!delta_cls.parents.empty() && delta_cls.parents != cls.parents) {
            report.rejected_changes.push_back(iri);
        }
        fill_annotation(iri, "label", cls.label, delta_cls.label);
        fill_annotation(iri, "comment", cls.comment, delta_cls.comment);
    }

    for (const auto& [iri, delta_prop] : delta.properties) {
        auto it = out.properties.find(iri);
        if (it == out.properties.end()) {
            out.properties[iri] = delta_prop;
            report.added_properties.push_back(iri);
            continue;
        }
        OntologyProperty& prop = it->second;
        bool conflict = delta_prop.kind != prop.kind ||
                        (delta_prop.domain && delta_prop.domain != prop.domain) ||
                        (delta_prop.range && delta_prop.range != prop.range);
        if (conflict) report.rejected_changes.push_back(iri);
        fill_annotation(iri, "label", prop.label, delta_prop.label);
        fill_annotation(iri, "comment", prop.comment, delta_prop.comment);
    }

    return {std::move(out), std::move(report)};
}

}  // namespace kgforge::onto
