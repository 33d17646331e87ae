#pragma once
// Mechanical ontology quality checks: missing annotations, dangling
// references, subclass cycles, duplicate labels and near-duplicate property
// names.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "kgforge/onto/graph_io.hpp"
#include "kgforge/onto/model.hpp"

namespace kgforge::onto {

/// Splits an IRI local name into lowercase tokens at camelCase, snake_case,
/// kebab-case and letter/digit boundaries. "coolingCapacityBtu" and
/// "btu_cooling_capacity" both yield {btu, capacity, cooling}.
inline std::set<std::string> name_tokens(const std::string& iri) {
    size_t cut = iri.find_last_of("#/");
    std::string local = cut == std::string::npos ? iri : iri.substr(cut + 1);

    std::set<std::string> tokens;
    std::string current;
    auto flush = [&] {
        if (!current.empty()) tokens.insert(current);
        current.clear();
    };
    char prev = '\0';
    for (char c : local) {
        if (c == '_' || c == '-' || c == '.') {
            flush();
            prev = c;
            continue;
        }
        bool upper = c >= 'A' && c <= 'Z';
        bool digit = c >= '0' && c <= '9';
        bool prev_lower = prev >= 'a' && prev <= 'z';
        bool prev_digit = prev >= '0' && prev <= '9';
        if ((upper && (prev_lower || prev_digit)) || (digit && prev_lower)) flush();
        if (!digit && prev_digit) flush();
        current.push_back(upper ? static_cast<char>(c - 'A' + 'a') : c);
        prev = c;
    }
    flush();
    return tokens;
}

inline double token_jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
    if (a.empty() && b.empty()) return 0.0;
    size_t intersection = 0;
    for (const auto& t : a) {
        if (b.count(t)) ++intersection;
    }
    size_t unions = a.size() + b.size() - intersection;
    return static_cast<double>(intersection) / static_cast<double>(unions);
}

inline constexpr double kNearDuplicateThreshold = 0.8;

/// Deterministic issue list, sorted by (severity, subject, code, message);
/// independent of map iteration order by construction.
inline std::vector<OntologyIssue> validate_ontology(const Ontology& o) {
    std::vector<OntologyIssue> issues;

    for (const auto& [iri, cls] : o.classes) {
        if (cls.comment.empty()) {
            issues.push_back(make_issue(iri, IssueCode::MissingComment, "class has no rdfs:comment"));
        }
        for (const Iri& parent : cls.parents) {
            if (!o.has_class(parent) && !rdf::vocab::is_builtin_namespace(parent.value)) {
                issues.push_back(make_issue(iri, IssueCode::DanglingReference,
                                            "superclass " + parent.value + " is not declared"));
            }
        }
    }
    for (const auto& [iri, prop] : o.properties) {
        if (!prop.domain) {
            issues.push_back(make_issue(iri, IssueCode::MissingDomain, "property has no rdfs:domain"));
        } else if (!o.has_class(*prop.domain) &&
                   !rdf::vocab::is_builtin_namespace(prop.domain->value)) {
            issues.push_back(make_issue(iri, IssueCode::DanglingReference,
                                        "domain " + prop.domain->value + " is not declared"));
        }
        if (!prop.range) {
            issues.push_back(make_issue(iri, IssueCode::MissingRange, "property has no rdfs:range"));
        } else if (!o.has_class(*prop.range) &&
                   !rdf::vocab::is_builtin_namespace(prop.range->value)) {
            issues.push_back(make_issue(iri, IssueCode::DanglingReference,
                                        "range " + prop.range->value + " is not declared"));
        }
        if (prop.comment.empty()) {
            issues.push_back(
                make_issue(iri, IssueCode::MissingComment, "property has no rdfs:comment"));
        }
    }

    // Duplicate rdfs:label across elements; one issue per label, anchored at
    // the smallest subject.
    std::map<std::string, std::vector<Iri>> by_label;
    for (const auto& [iri, cls] : o.classes) {
        if (!cls.label.empty()) by_label[cls.label].push_back(iri);
    }
    for (const auto& [iri, prop] : o.properties) {
        if (!prop.label.empty()) by_label[prop.label].push_back(iri);
    }
    for (auto& [label, subjects] : by_label) {
        if (subjects.size() < 2) continue;
        std::sort(subjects.begin(), subjects.end());
        std::string others;
        for (size_t i = 1; i < subjects.size(); ++i) {
            if (!others.empty()) others += ", ";
            others += subjects[i].value;
        }
        issues.push_back(make_issue(subjects.front(), IssueCode::DuplicateLabel,
                                    "label \"" + label + "\" also used by " + others));
    }

    // Near-duplicate property names by token-set Jaccard similarity.
    std::vector<std::pair<Iri, std::set<std::string>>> tokenized;
    tokenized.reserve(o.properties.size());
    for (const auto& [iri, prop] : o.properties) tokenized.emplace_back(iri, name_tokens(iri.value));
    for (size_t i = 0; i < tokenized.size(); ++i) {
        for (size_t j = i + 1; j < tokenized.size(); ++j) {
            double sim = token_jaccard(tokenized[i].second, tokenized[j].second);
            if (sim >= kNearDuplicateThreshold) {
                issues.push_back(make_issue(
                    tokenized[i].first, IssueCode::NearDuplicateProperty,
                    "property name is nearly identical to " + tokenized[j].first.value));
            }
        }
    }

    std::vector<Iri> cycle;
    if (detail::find_subclass_cycle(o, &cycle)) {
        std::string path;
        for (const Iri& step : cycle) {
            if (!path.empty()) path += " -> ";
            path += step.value;
        }
        issues.push_back(make_issue(cycle.front(), IssueCode::SubclassCycle,
                                    "subclass cycle: " + path));
    }

    std::sort(issues.begin(), issues.end());
    issues.erase(std::unique(issues.begin(), issues.end()), issues.end());
    return issues;
}

/// True when the issue list contains at least one Error.
inline bool has_errors(const std::vector<OntologyIssue>& issues) {
    return std::any_of(issues.begin(), issues.end(),
                       [](const OntologyIssue& i) { return i.severity == Severity::Error; });
}

}  // namespace kgforge::onto
