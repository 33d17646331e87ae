#pragma once
// JSON round-trips for run artifacts: trace.json, results.json and the
// refinement report. Key order is fixed so artifacts are byte-deterministic.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kgforge/rdf/turtle.hpp"
#include "kgforge/stages/expansion.hpp"
#include "kgforge/stages/populate.hpp"
#include "kgforge/stages/refine.hpp"

namespace kgforge {

namespace detail {

inline nlohmann::ordered_json term_to_json(const rdf::Term& t) {
    nlohmann::ordered_json j;
    if (rdf::is_iri(t)) {
        j["kind"] = "iri";
        j["value"] = rdf::as_iri(t).value;
    } else if (rdf::is_blank(t)) {
        j["kind"] = "blank";
        j["value"] = rdf::as_blank(t).label;
    } else {
        const rdf::Literal& lit = rdf::as_literal(t);
        j["kind"] = "literal";
        j["value"] = lit.lexical;
        j["datatype"] = lit.datatype.value;
        if (!lit.language.empty()) j["language"] = lit.language;
    }
    return j;
}

inline rdf::Term term_from_json(const nlohmann::json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "iri") return rdf::Iri{j.at("value").get<std::string>()};
    if (kind == "blank") return rdf::BlankNode{j.at("value").get<std::string>()};
    rdf::Literal lit;
    lit.lexical = j.at("value").get<std::string>();
    lit.datatype = rdf::Iri{j.at("datatype").get<std::string>()};
    if (j.contains("language")) lit.language = j.at("language").get<std::string>();
    return lit;
}

inline nlohmann::ordered_json triple_to_json(const rdf::Triple& t) {
    nlohmann::ordered_json j;
    j["subject"] = term_to_json(t.subject);
    j["predicate"] = t.predicate.value;
    j["object"] = term_to_json(t.object);
    return j;
}

inline rdf::Triple triple_from_json(const nlohmann::json& j) {
    return rdf::Triple{term_from_json(j.at("subject")),
                       rdf::Iri{j.at("predicate").get<std::string>()},
                       term_from_json(j.at("object"))};
}

inline nlohmann::ordered_json iris_to_json(const std::vector<onto::Iri>& iris) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& iri : iris) arr.push_back(iri.value);
    return arr;
}

}  // namespace detail

// --- merge report -----------------------------------------------------------

inline nlohmann::ordered_json merge_report_to_json(const onto::MergeReport& r) {
    nlohmann::ordered_json j;
    j["added_classes"] = detail::iris_to_json(r.added_classes);
    j["added_properties"] = detail::iris_to_json(r.added_properties);
    nlohmann::ordered_json updates = nlohmann::ordered_json::array();
    for (const auto& u : r.annotation_updates) {
        updates.push_back({{"subject", u.subject.value},
                           {"field", u.field},
                           {"old", u.old_value},
                           {"new", u.new_value}});
    }
    j["annotation_updates"] = updates;
    j["rejected_changes"] = detail::iris_to_json(r.rejected_changes);
    return j;
}

// --- expansion trace ---------------------------------------------------------

inline nlohmann::ordered_json trace_to_json(const stages::ExpansionTrace& trace) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& it : trace.iterations) {
        nlohmann::ordered_json j;
        j["batch_ids"] = it.batch_ids;
        j["new_classes"] = it.new_classes;
        j["new_properties"] = it.new_properties;
        j["merge_report"] = merge_report_to_json(it.merge_report);
        if (it.failed) {
            j["failed"] = true;
            j["error"] = it.error;
        }
        arr.push_back(std::move(j));
    }
    return nlohmann::ordered_json{{"iterations", std::move(arr)}};
}

// --- diff / refinement -------------------------------------------------------

inline nlohmann::ordered_json diff_to_json(const onto::DiffReport& d) {
    auto changed = [](const std::vector<onto::ChangedElement>& elements) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& e : elements) {
            nlohmann::ordered_json changes = nlohmann::ordered_json::array();
            for (const auto& c : e.changes) {
                changes.push_back({{"field", c.field}, {"old", c.old_value}, {"new", c.new_value}});
            }
            arr.push_back({{"iri", e.iri.value}, {"changes", std::move(changes)}});
        }
        return arr;
    };
    nlohmann::ordered_json j;
    j["added_classes"] = detail::iris_to_json(d.added_classes);
    j["removed_classes"] = detail::iris_to_json(d.removed_classes);
    j["changed_classes"] = changed(d.changed_classes);
    j["added_properties"] = detail::iris_to_json(d.added_properties);
    j["removed_properties"] = detail::iris_to_json(d.removed_properties);
    j["changed_properties"] = changed(d.changed_properties);
    return j;
}

inline nlohmann::ordered_json refinement_to_json(const stages::RefinementReport& r) {
    nlohmann::ordered_json j;
    j["accepted"] = r.accepted;
    j["diff"] = diff_to_json(r.diff);
    nlohmann::ordered_json renames = nlohmann::ordered_json::object();
    for (const auto& [old_iri, targets] : r.rename_map) renames[old_iri] = targets;
    j["rename_map"] = renames;
    j["unmapped_removals"] = r.unmapped_removals;
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

// --- population results ------------------------------------------------------

inline nlohmann::ordered_json results_to_json(const std::vector<stages::PopulationResult>& rs) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rs) {
        nlohmann::ordered_json j;
        j["product_id"] = r.product_id;
        if (r.succeeded()) {
            const auto& s = r.success();
            j["status"] = "success";
            j["triple_count"] = s.triples.size();
            nlohmann::ordered_json issues = nlohmann::ordered_json::array();
            for (const auto& issue : s.conformance) {
                issues.push_back(
                    {{"code", stages::to_string(issue.code)},
                     {"severity", issue.severity == onto::Severity::Error ? "error" : "warning"},
                     {"triple", detail::triple_to_json(issue.triple)}});
            }
            j["conformance"] = issues;
        } else {
            const auto& f = r.failure();
            j["status"] = "failure";
            j["attempts"] = f.attempts;
            j["cause"] = stages::to_string(f.cause);
            j["detail"] = f.detail;
        }
        arr.push_back(std::move(j));
    }
    return nlohmann::ordered_json{{"results", std::move(arr)}};
}

struct ResultSummaryEntry {
    std::string product_id;
    bool succeeded = false;
    size_t conformance_errors = 0;
    size_t conformance_warnings = 0;
};

// results.json carries enough to recompute metrics without re-running the
// pipeline; this reads just that.
inline std::vector<ResultSummaryEntry> result_summaries_from_json(const nlohmann::json& j) {
    std::vector<ResultSummaryEntry> out;
    for (const auto& r : j.at("results")) {
        ResultSummaryEntry e;
        e.product_id = r.at("product_id").get<std::string>();
        e.succeeded = r.at("status").get<std::string>() == "success";
        if (e.succeeded) {
            for (const auto& issue : r.at("conformance")) {
                if (issue.at("severity").get<std::string>() == "error") ++e.conformance_errors;
                else ++e.conformance_warnings;
            }
        }
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace kgforge
