#pragma once
// Ontology bootstrap and iterative expansion with plateau stopping. The
// merge guarantees schema stability even when the agent omits or mangles
// existing elements.

#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "kgforge/agent/gateway.hpp"
#include "kgforge/agent/prompts.hpp"
#include "kgforge/corpus.hpp"
#include "kgforge/onto/graph_io.hpp"
#include "kgforge/onto/merge.hpp"
#include "kgforge/onto/validate.hpp"
#include "kgforge/rdf/turtle.hpp"
#include "kgforge/stages/extract.hpp"

namespace kgforge::stages {

enum class StageErrorKind { InvalidRDF, EmptyOntology, AgentError };

struct StageError : std::runtime_error {
    StageErrorKind kind;
    StageError(StageErrorKind kind_, const std::string& msg)
        : std::runtime_error(msg), kind(kind_) {}
};

struct ExpansionConfig {
    int batch_size = 5;
    int sample_budget = 30;
    int plateau_window = 2;
    int plateau_threshold = 2;  // an iteration "plateaus" when it adds fewer
    uint64_t seed = 0;

    void check() const {
        if (batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
        if (sample_budget < batch_size) {
            throw std::invalid_argument("sample_budget must be >= batch_size");
        }
        if (plateau_window < 1) throw std::invalid_argument("plateau_window must be >= 1");
    }
};

struct ExpansionIteration {
    std::vector<std::string> batch_ids;
    size_t new_classes = 0;
    size_t new_properties = 0;
    onto::MergeReport merge_report;
    bool failed = false;
    std::string error;
};

struct ExpansionTrace {
    std::vector<ExpansionIteration> iterations;
};

namespace detail {

inline std::string format_batch(const std::vector<ProductRecord>& batch) {
    std::string out;
    for (const ProductRecord& p : batch) {
        out += "### Product " + p.id + "\n" + p.description + "\n\n";
    }
    return out;
}

inline std::string ontology_turtle(const onto::Ontology& o) {
    return rdf::serialize_turtle(onto::ontology_to_graph(o));
}

// Renders, invokes and lifts one schema-producing exchange, retrying with
// the error appended to the prompt. Issues of Error severity count as
// failures so the stage re-asks instead of silently keeping a broken schema.
inline std::pair<onto::Ontology, std::vector<onto::OntologyIssue>> request_schema(
    AgentGateway& gw, const PromptTemplate& tpl, const std::map<std::string, std::string>& vars,
    const AgentParams& params, int max_attempts, bool require_classes) {
    const std::string base_prompt = render_prompt(tpl, vars);
    std::string last_error;
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        std::string prompt = base_prompt;
        if (attempt > 1) {
            prompt += "\n\nYour previous output was rejected: " + last_error +
                      "\nReturn a corrected Turtle document in a single fenced code block.";
        }
        AgentRequest req{tpl.id, prompt, params};
        AgentResponse resp;
        try {
            resp = gw.invoke(req);
        } catch (const std::exception& e) {
            throw StageError(StageErrorKind::AgentError, e.what());
        }

        try {
            rdf::Graph g = rdf::parse_turtle(extract_turtle_payload(resp.text));
            auto [ontology, issues] = onto::ontology_from_graph(g);
            if (onto::has_errors(issues)) {
                std::string detail;
                for (const auto& issue : issues) {
                    if (issue.severity != onto::Severity::Error) continue;
                    if (!detail.empty()) detail += "; ";
                    detail += issue.message;
                }
                last_error = "schema errors: " + detail;
                continue;
            }
            if (require_classes && ontology.classes.empty()) {
                last_error = "no classes were declared";
                continue;
            }
            return {std::move(ontology), std::move(issues)};
        } catch (const rdf::SyntaxError& e) {
            last_error = e.what();
        } catch (const onto::StructureError& e) {
            last_error = e.what();
        }
    }
    if (last_error == "no classes were declared") {
        throw StageError(StageErrorKind::EmptyOntology,
                         "agent produced no ontology classes after " +
                             std::to_string(max_attempts) + " attempts");
    }
    throw StageError(StageErrorKind::InvalidRDF,
                     "agent produced invalid RDF after " + std::to_string(max_attempts) +
                         " attempts: " + last_error);
}

}  // namespace detail

/// First contact with a fresh batch: extract an initial ontology from the
/// concatenated product descriptions.
inline std::pair<onto::Ontology, std::vector<onto::OntologyIssue>> bootstrap_ontology(
    const std::vector<ProductRecord>& batch, AgentGateway& gw, const TemplateSet& templates,
    const std::string& schema_namespace, const AgentParams& params = {}, int max_attempts = 3) {
    if (batch.empty()) throw std::invalid_argument("bootstrap batch must be non-empty");
    auto [ontology, issues] = detail::request_schema(
        gw, get_template(templates, "bootstrap"),
        {{"products", detail::format_batch(batch)}, {"namespace", schema_namespace}}, params,
        max_attempts, /*require_classes=*/true);
    ontology.namespace_iri = schema_namespace;
    return {std::move(ontology), std::move(issues)};
}

/// One expansion round: the agent sees the current schema plus a fresh batch
/// and returns a delta; the monotonic merge keeps every existing element.
inline std::pair<onto::Ontology, onto::MergeReport> expand_once(
    const onto::Ontology& current, const std::vector<ProductRecord>& batch, AgentGateway& gw,
    const TemplateSet& templates, const AgentParams& params = {}, int max_attempts = 3) {
    auto [delta, issues] = detail::request_schema(
        gw, get_template(templates, "expand"),
        {{"ontology", detail::ontology_turtle(current)},
         {"products", detail::format_batch(batch)},
         {"namespace", current.namespace_iri}},
        params, max_attempts, /*require_classes=*/false);
    auto [merged, report] = onto::ontology_merge(current, delta);
    return {std::move(merged), std::move(report)};
}

/// Bootstrap plus expansion over seeded, non-overlapping batches. Stops when
/// the sample budget is exhausted, every fresh sample is consumed, or the
/// last `plateau_window` iterations each added fewer than
/// `plateau_threshold` new elements.
inline std::pair<onto::Ontology, ExpansionTrace> expansion_loop(
    const Corpus& corpus, const std::string& category, const ExpansionConfig& cfg,
    AgentGateway& gw, const TemplateSet& templates, const std::string& schema_namespace,
    const AgentParams& params = {}, int max_attempts = 3) {
    cfg.check();
    if (!corpus.has_category(category)) throw UnknownCategory(category);

    // One fixed permutation; batches are consecutive slices, so no sample is
    // reused across iterations.
    std::vector<ProductRecord> permutation =
        sample_products(corpus, category, corpus.category_size(category), cfg.seed);

    onto::Ontology ontology;
    ExpansionTrace trace;
    size_t consumed = 0;

    auto next_batch = [&]() {
        size_t take = std::min(static_cast<size_t>(cfg.batch_size), permutation.size() - consumed);
        std::vector<ProductRecord> batch(permutation.begin() + consumed,
                                         permutation.begin() + consumed + take);
        consumed += take;
        return batch;
    };
    auto batch_ids = [](const std::vector<ProductRecord>& batch) {
        std::vector<std::string> ids;
        ids.reserve(batch.size());
        for (const auto& p : batch) ids.push_back(p.id);
        return ids;
    };
    auto plateaued = [&]() {
        if (trace.iterations.size() < static_cast<size_t>(cfg.plateau_window)) return false;
        for (size_t i = trace.iterations.size() - cfg.plateau_window; i < trace.iterations.size();
             ++i) {
            const auto& it = trace.iterations[i];
            if (it.new_classes + it.new_properties >= static_cast<size_t>(cfg.plateau_threshold)) {
                return false;
            }
        }
        return true;
    };

    bool first = true;
    while (consumed < permutation.size() && consumed < static_cast<size_t>(cfg.sample_budget) &&
           !plateaued()) {
        std::vector<ProductRecord> batch = next_batch();
        if (batch.empty()) break;

        ExpansionIteration iteration;
        iteration.batch_ids = batch_ids(batch);
        if (first) {
            // Bootstrap failures abort the run: there is nothing to expand.
            auto [boot, issues] = bootstrap_ontology(batch, gw, templates, schema_namespace,
                                                     params, max_attempts);
            auto [merged, report] = onto::ontology_merge(ontology, boot);
            ontology = std::move(merged);
            iteration.merge_report = std::move(report);
            first = false;
        } else {
            try {
                auto [merged, report] = expand_once(ontology, batch, gw, templates, params,
                                                    max_attempts);
                ontology = std::move(merged);
                iteration.merge_report = std::move(report);
            } catch (const StageError& e) {
                iteration.failed = true;
                iteration.error = e.what();
            }
        }
        iteration.new_classes = iteration.merge_report.added_classes.size();
        iteration.new_properties = iteration.merge_report.added_properties.size();
        trace.iterations.push_back(std::move(iteration));
    }
    return {std::move(ontology), std::move(trace)};
}

}  // namespace kgforge::stages
