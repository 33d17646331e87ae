#pragma once
// Zero-shot ontology refinement with reconciliation. The agent returns a
// complete revised ontology plus an optional mapping block; removals that
// cannot be mapped to replacements reject the refinement unless drops are
// explicitly allowed.

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kgforge/onto/diff.hpp"
#include "kgforge/stages/expansion.hpp"

namespace kgforge::stages {

struct RefinementReport {
    onto::DiffReport diff;
    std::map<std::string, std::vector<std::string>> rename_map;  // old IRI -> new IRIs
    std::vector<std::string> unmapped_removals;
    bool accepted = false;
    std::string error;  // set when the agent response was unusable
};

namespace detail {

// Mapping block: a fenced ```json block of the form
// {"rename_map": {"<old-iri>": ["<new-iri>", ...]}}.
inline std::map<std::string, std::vector<std::string>> parse_rename_block(
    const std::string& response) {
    std::map<std::string, std::vector<std::string>> out;
    auto payload = extract_json_payload(response);
    if (!payload) return out;
    nlohmann::json j = nlohmann::json::parse(*payload, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("rename_map") ||
        !j["rename_map"].is_object()) {
        return out;
    }
    for (const auto& [old_iri, targets] : j["rename_map"].items()) {
        std::vector<std::string> list;
        if (targets.is_string()) {
            list.push_back(targets.get<std::string>());
        } else if (targets.is_array()) {
            for (const auto& t : targets) {
                if (t.is_string()) list.push_back(t.get<std::string>());
            }
        }
        if (!list.empty()) out[old_iri] = std::move(list);
    }
    return out;
}

}  // namespace detail

/// Refines the full ontology in one zero-shot exchange. Reconciliation maps
/// every removed element to its replacements, first through the agent's
/// mapping block, then by name-token similarity against added elements.
/// When `allow_drops` is false and any removal stays unmapped, the original
/// ontology is returned with accepted=false.
inline std::pair<onto::Ontology, RefinementReport> refine_ontology(
    const onto::Ontology& o, AgentGateway& gw, const TemplateSet& templates, bool allow_drops,
    const AgentParams& params = {}, int max_attempts = 3) {
    const PromptTemplate& tpl = get_template(templates, "refine");
    const std::string base_prompt = render_prompt(
        tpl, {{"ontology", detail::ontology_turtle(o)}, {"namespace", o.namespace_iri}});

    RefinementReport report;
    onto::Ontology revised;
    std::map<std::string, std::vector<std::string>> agent_map;
    std::string last_error;
    bool got_revision = false;

    for (int attempt = 1; attempt <= max_attempts && !got_revision; ++attempt) {
        std::string prompt = base_prompt;
        if (attempt > 1) {
            prompt += "\n\nYour previous output was rejected: " + last_error +
                      "\nReturn the full revised ontology as Turtle in a fenced code block.";
        }
        AgentRequest req{tpl.id, prompt, params};
        AgentResponse resp;
        try {
            resp = gw.invoke(req);
        } catch (const std::exception& e) {
            report.error = e.what();
            return {o, std::move(report)};
        }
        try {
            rdf::Graph g = rdf::parse_turtle(extract_turtle_payload(resp.text));
            auto [lifted, issues] = onto::ontology_from_graph(g);
            if (onto::has_errors(issues)) {
                std::string detail_msg;
                for (const auto& issue : issues) {
                    if (issue.severity != onto::Severity::Error) continue;
                    if (!detail_msg.empty()) detail_msg += "; ";
                    detail_msg += issue.message;
                }
                last_error = "schema errors: " + detail_msg;
                continue;
            }
            revised = std::move(lifted);
            if (revised.namespace_iri.empty()) revised.namespace_iri = o.namespace_iri;
            agent_map = detail::parse_rename_block(resp.text);
            got_revision = true;
        } catch (const rdf::SyntaxError& e) {
            last_error = e.what();
        } catch (const onto::StructureError& e) {
            last_error = e.what();
        }
    }
    if (!got_revision) {
        report.error = "agent produced invalid RDF after " + std::to_string(max_attempts) +
                       " attempts: " + last_error;
        return {o, std::move(report)};
    }

    report.diff = onto::ontology_diff(o, revised);

    // Reconcile removals: agent mapping first (targets must exist in the
    // revision), then token similarity against added elements.
    std::vector<std::string> added;
    for (const auto& iri : report.diff.added_classes) added.push_back(iri.value);
    for (const auto& iri : report.diff.added_properties) added.push_back(iri.value);

    auto exists_in_revised = [&](const std::string& iri) {
        return revised.has_class(onto::Iri{iri}) || revised.has_property(onto::Iri{iri});
    };
    auto reconcile = [&](const onto::Iri& removed) {
        auto it = agent_map.find(removed.value);
        if (it != agent_map.end()) {
            bool all_exist = true;
            for (const std::string& target : it->second) {
                if (!exists_in_revised(target)) all_exist = false;
            }
            if (all_exist) {
                report.rename_map[removed.value] = it->second;
                return;
            }
        }
        std::vector<std::string> similar;
        auto removed_tokens = onto::name_tokens(removed.value);
        for (const std::string& candidate : added) {
            if (onto::token_jaccard(removed_tokens, onto::name_tokens(candidate)) >=
                onto::kNearDuplicateThreshold) {
                similar.push_back(candidate);
            }
        }
        if (!similar.empty()) {
            report.rename_map[removed.value] = std::move(similar);
        } else {
            report.unmapped_removals.push_back(removed.value);
        }
    };
    for (const auto& iri : report.diff.removed_classes) reconcile(iri);
    for (const auto& iri : report.diff.removed_properties) reconcile(iri);

    if (!report.unmapped_removals.empty() && !allow_drops) {
        report.accepted = false;
        return {o, std::move(report)};
    }
    report.accepted = true;
    return {std::move(revised), std::move(report)};
}

}  // namespace kgforge::stages
