#pragma once
// KG population: per-product triple generation with conformance checking
// and failure accounting. Failures are data, not exceptions.

#include <atomic>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "kgforge/agent/sha256.hpp"
#include "kgforge/stages/expansion.hpp"

namespace kgforge::stages {

/// Stable instance IRI for a product: base + slug(id). The slug lowercases,
/// collapses non-alphanumeric runs to single hyphens and trims them; an
/// empty slug falls back to the first 16 hex chars of SHA-256(description).
inline rdf::Iri mint_subject_iri(const ProductRecord& p, const std::string& base) {
    if (base.empty() || (base.back() != '/' && base.back() != '#')) {
        throw std::invalid_argument("instance base IRI must end with '/' or '#'");
    }
    std::string slug;
    bool pending_hyphen = false;
    for (char c : p.id) {
        bool alnum = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
        if (alnum) {
            if (pending_hyphen && !slug.empty()) slug.push_back('-');
            pending_hyphen = false;
            slug.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
        } else {
            pending_hyphen = true;
        }
    }
    if (slug.empty()) slug = sha256_hex(p.description).substr(0, 16);
    return rdf::Iri{base + slug};
}

enum class ConformanceCode {
    UnknownPredicate,
    DomainViolation,
    RangeViolation,
    DatatypeMismatch,
    UntypedSubject,
};

inline const char* to_string(ConformanceCode c) {
    switch (c) {
        case ConformanceCode::UnknownPredicate: return "unknown-predicate";
        case ConformanceCode::DomainViolation: return "domain-violation";
        case ConformanceCode::RangeViolation: return "range-violation";
        case ConformanceCode::DatatypeMismatch: return "datatype-mismatch";
        case ConformanceCode::UntypedSubject: return "untyped-subject";
    }
    return "unknown";
}

enum class ConformanceMode { Lenient, Strict };

struct ConformanceIssue {
    rdf::Triple triple;
    ConformanceCode code;
    onto::Severity severity;

    friend bool operator==(const ConformanceIssue&, const ConformanceIssue&) = default;
};

// UntypedSubject always warns; everything else is an error in strict mode
// and a warning in lenient mode.
inline onto::Severity conformance_severity(ConformanceCode code, ConformanceMode mode) {
    if (code == ConformanceCode::UntypedSubject) return onto::Severity::Warning;
    return mode == ConformanceMode::Strict ? onto::Severity::Error : onto::Severity::Warning;
}

namespace detail {

// subject term -> asserted types within the triple list
inline std::map<rdf::Term, std::set<std::string>> asserted_types(
    const std::vector<rdf::Triple>& ts) {
    std::map<rdf::Term, std::set<std::string>> types;
    for (const auto& t : ts) {
        if (t.predicate.value == rdf::vocab::rdf_type && rdf::is_iri(t.object)) {
            types[t.subject].insert(rdf::as_iri(t.object).value);
        }
    }
    return types;
}

// class -> itself plus all ancestors through rdfs:subClassOf
inline std::map<std::string, std::set<std::string>> subclass_closure(const onto::Ontology& o) {
    std::map<std::string, std::set<std::string>> closure;
    for (const auto& [iri, cls] : o.classes) {
        std::set<std::string>& ancestors = closure[iri.value];
        std::vector<onto::Iri> work(cls.parents.begin(), cls.parents.end());
        ancestors.insert(iri.value);
        while (!work.empty()) {
            onto::Iri parent = work.back();
            work.pop_back();
            if (!ancestors.insert(parent.value).second) continue;
            auto it = o.classes.find(parent);
            if (it != o.classes.end()) {
                work.insert(work.end(), it->second.parents.begin(), it->second.parents.end());
            }
        }
    }
    return closure;
}

inline bool type_satisfies(const std::set<std::string>& subject_types, const std::string& wanted,
                           const std::map<std::string, std::set<std::string>>& closure) {
    for (const std::string& t : subject_types) {
        if (t == wanted) return true;
        auto it = closure.find(t);
        if (it != closure.end() && it->second.count(wanted)) return true;
    }
    return false;
}

}  // namespace detail

/// Checks each triple against the ontology: predicates must be declared,
/// subjects typed compatibly with the property domain (through the subclass
/// closure), object-property objects must be IRIs typed compatibly with the
/// range, and datatype-property literals must match the declared range
/// (integer promotes to decimal). rdf:type triples themselves are exempt
/// from the predicate-declaration check.
inline std::vector<ConformanceIssue> validate_triples(const std::vector<rdf::Triple>& ts,
                                                      const onto::Ontology& o,
                                                      ConformanceMode mode) {
    std::vector<ConformanceIssue> issues;
    auto types = detail::asserted_types(ts);
    auto closure = detail::subclass_closure(o);
    auto report = [&](const rdf::Triple& t, ConformanceCode code) {
        issues.push_back(ConformanceIssue{t, code, conformance_severity(code, mode)});
    };

    for (const auto& t : ts) {
        if (t.predicate.value == rdf::vocab::rdf_type) continue;

        auto prop_it = o.properties.find(onto::Iri{t.predicate.value});
        if (prop_it == o.properties.end()) {
            report(t, ConformanceCode::UnknownPredicate);
            continue;
        }
        const onto::OntologyProperty& prop = prop_it->second;

        auto type_it = types.find(t.subject);
        if (type_it == types.end()) {
            report(t, ConformanceCode::UntypedSubject);
        } else if (prop.domain &&
                   !detail::type_satisfies(type_it->second, prop.domain->value, closure)) {
            report(t, ConformanceCode::DomainViolation);
        }

        if (prop.kind == onto::PropertyKind::Datatype) {
            if (!rdf::is_literal(t.object)) {
                report(t, ConformanceCode::RangeViolation);
            } else if (prop.range) {
                const rdf::Literal& lit = rdf::as_literal(t.object);
                bool promotable = lit.datatype.value == rdf::vocab::xsd_integer &&
                                  prop.range->value == rdf::vocab::xsd_decimal;
                if (lit.datatype.value != prop.range->value && !promotable) {
                    report(t, ConformanceCode::DatatypeMismatch);
                }
            }
        } else {
            if (!rdf::is_iri(t.object)) {
                report(t, ConformanceCode::RangeViolation);
            } else if (prop.range) {
                auto obj_types = types.find(t.object);
                if (obj_types != types.end() &&
                    !detail::type_satisfies(obj_types->second, prop.range->value, closure)) {
                    report(t, ConformanceCode::RangeViolation);
                }
            }
        }
    }
    return issues;
}

enum class FailureCause { InvalidRDF, AgentError, Timeout };

inline const char* to_string(FailureCause c) {
    switch (c) {
        case FailureCause::InvalidRDF: return "invalid-rdf";
        case FailureCause::AgentError: return "agent-error";
        case FailureCause::Timeout: return "timeout";
    }
    return "unknown";
}

struct PopulationSuccess {
    std::vector<rdf::Triple> triples;  // strict mode already dropped Error triples
    std::vector<ConformanceIssue> conformance;
};

struct PopulationFailure {
    int attempts = 0;
    FailureCause cause = FailureCause::InvalidRDF;
    std::string detail;
};

struct PopulationResult {
    std::string product_id;
    std::variant<PopulationSuccess, PopulationFailure> outcome;

    bool succeeded() const { return std::holds_alternative<PopulationSuccess>(outcome); }
    const PopulationSuccess& success() const { return std::get<PopulationSuccess>(outcome); }
    const PopulationFailure& failure() const { return std::get<PopulationFailure>(outcome); }
};

struct PopulateOptions {
    std::string instance_base;  // ends with '/' or '#'
    int max_attempts = 3;
    ConformanceMode mode = ConformanceMode::Lenient;
    AgentParams params;
};

namespace detail {

// The minted IRI must carry an rdf:type and every other subject must be
// reachable from it; responses describing stray entities are re-asked.
inline std::string check_rooted(const std::vector<rdf::Triple>& ts, const rdf::Iri& root) {
    bool root_typed = false;
    std::set<rdf::Term> reachable{rdf::Term{root}};
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& t : ts) {
            if (reachable.count(t.subject) && !rdf::is_literal(t.object) &&
                reachable.insert(t.object).second) {
                grew = true;
            }
        }
    }
    std::set<std::string> stray;
    for (const auto& t : ts) {
        if (t.subject == rdf::Term{root} && t.predicate.value == rdf::vocab::rdf_type) {
            root_typed = true;
        }
        if (!reachable.count(t.subject)) {
            if (rdf::is_iri(t.subject)) stray.insert(rdf::as_iri(t.subject).value);
            else stray.insert("_:" + rdf::as_blank(t.subject).label);
        }
    }
    if (!root_typed) return "missing rdf:type triple for subject <" + root.value + ">";
    if (!stray.empty()) {
        std::string msg = "triples not connected to <" + root.value + ">:";
        for (const auto& s : stray) msg += " " + s;
        return msg;
    }
    return "";
}

}  // namespace detail

/// Generates triples for one product. Parse or structure failures retry with
/// the error appended to the prompt up to max_attempts; in strict mode
/// Error-severity triples are dropped from the output (issues retained).
inline PopulationResult populate_product(const ProductRecord& p, const onto::Ontology& o,
                                         AgentGateway& gw, const TemplateSet& templates,
                                         const PopulateOptions& opts) {
    if (opts.max_attempts < 1) throw std::invalid_argument("max_attempts must be >= 1");

    rdf::Iri subject = mint_subject_iri(p, opts.instance_base);
    const PromptTemplate& tpl = get_template(templates, "populate");
    const std::string base_prompt = render_prompt(tpl, {
                                                           {"ontology", detail::ontology_turtle(o)},
                                                           {"product_id", p.id},
                                                           {"description", p.description},
                                                           {"subject_iri", subject.value},
                                                           {"namespace", o.namespace_iri},
                                                       });

    std::string last_error;
    for (int attempt = 1; attempt <= opts.max_attempts; ++attempt) {
        std::string prompt = base_prompt;
        if (attempt > 1) {
            prompt += "\n\nYour previous output was rejected: " + last_error +
                      "\nReturn corrected Turtle in a single fenced code block.";
        }
        AgentRequest req{tpl.id, prompt, opts.params};
        AgentResponse resp;
        try {
            resp = gw.invoke(req);
        } catch (const TimeoutError& e) {
            return {p.id, PopulationFailure{attempt, FailureCause::Timeout, e.what()}};
        } catch (const std::exception& e) {
            return {p.id, PopulationFailure{attempt, FailureCause::AgentError, e.what()}};
        }

        rdf::Graph g;
        try {
            g = rdf::parse_turtle(extract_turtle_payload(resp.text));
        } catch (const rdf::SyntaxError& e) {
            last_error = e.what();
            continue;
        }
        std::vector<rdf::Triple> triples(g.triples().begin(), g.triples().end());
        if (std::string structure = detail::check_rooted(triples, subject); !structure.empty()) {
            last_error = structure;
            continue;
        }

        auto conformance = validate_triples(triples, o, opts.mode);
        if (opts.mode == ConformanceMode::Strict) {
            std::set<rdf::Triple> dropped;
            for (const auto& issue : conformance) {
                if (issue.severity == onto::Severity::Error) dropped.insert(issue.triple);
            }
            if (!dropped.empty()) {
                std::vector<rdf::Triple> kept;
                kept.reserve(triples.size() - dropped.size());
                for (auto& t : triples) {
                    if (!dropped.count(t)) kept.push_back(std::move(t));
                }
                triples = std::move(kept);
            }
        }
        return {p.id, PopulationSuccess{std::move(triples), std::move(conformance)}};
    }
    return {p.id, PopulationFailure{opts.max_attempts, FailureCause::InvalidRDF, last_error}};
}

/// Populates every product, up to max_inflight concurrently. Results are in
/// corpus order and the unified graph is the union of all Success triples,
/// so output is independent of completion order.
inline std::pair<rdf::Graph, std::vector<PopulationResult>> populate_corpus(
    const Corpus& corpus, const onto::Ontology& o, AgentGateway& gw, const TemplateSet& templates,
    const PopulateOptions& opts, int max_inflight = 4) {
    const auto& records = corpus.records();
    std::vector<PopulationResult> results(records.size());

    int workers = std::max(1, std::min<int>(max_inflight, static_cast<int>(records.size())));
    if (workers <= 1) {
        for (size_t i = 0; i < records.size(); ++i) {
            results[i] = populate_product(records[i], o, gw, templates, opts);
        }
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                while (true) {
                    size_t i = next.fetch_add(1);
                    if (i >= records.size()) break;
                    results[i] = populate_product(records[i], o, gw, templates, opts);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    rdf::Graph kg;
    if (!o.namespace_iri.empty()) kg.set_prefix("", o.namespace_iri);
    if (!opts.instance_base.empty()) kg.set_prefix("p", opts.instance_base);
    kg.set_prefix("xsd", std::string(rdf::vocab::XSD));
    for (const auto& result : results) {
        if (!result.succeeded()) continue;
        for (const auto& t : result.success().triples) kg.insert(t);
    }
    return {std::move(kg), std::move(results)};
}

}  // namespace kgforge::stages
