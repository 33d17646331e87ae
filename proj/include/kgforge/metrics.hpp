#pragma once
// Run evaluation: triple counts, property coverage, failure accounting and
// ontology statistics. Pure computations over artifacts.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kgforge/onto/model.hpp"
#include "kgforge/rdf/graph.hpp"
#include "kgforge/stages/populate.hpp"

namespace kgforge {

struct CoverageResult {
    size_t instantiated = 0;
    size_t total = 0;
    double ratio = 0.0;
    bool defined = false;  // false when the ontology has no properties
};

/// Fraction of ontology properties that appear as a predicate of at least
/// one triple in the KG. A set ratio: instance counts do not matter, and
/// rdf:type never counts toward any property.
inline CoverageResult property_coverage(const rdf::Graph& kg, const onto::Ontology& o) {
    CoverageResult r;
    r.total = o.properties.size();
    if (r.total == 0) return r;

    std::set<std::string> predicates;
    for (const auto& t : kg.triples()) {
        if (t.predicate.value != rdf::vocab::rdf_type) predicates.insert(t.predicate.value);
    }
    for (const auto& [iri, prop] : o.properties) {
        if (predicates.count(iri.value)) ++r.instantiated;
    }
    r.ratio = static_cast<double>(r.instantiated) / static_cast<double>(r.total);
    r.defined = true;
    return r;
}

struct RunMetrics {
    size_t products_total = 0;
    size_t products_succeeded = 0;
    size_t products_failed = 0;
    double failure_rate = 0.0;
    bool failure_rate_defined = false;
    size_t triples_total = 0;
    size_t properties_total = 0;
    size_t properties_instantiated = 0;
    double property_coverage = 0.0;
    bool property_coverage_defined = false;
    onto::OntologyStats ontology_stats;
    size_t conformance_errors = 0;
    size_t conformance_warnings = 0;

    friend bool operator==(const RunMetrics&, const RunMetrics&) = default;
};

/// Aggregates one run. All invariants hold by construction:
/// succeeded + failed = total, ratios guarded when denominators are zero.
inline RunMetrics run_summary(const std::vector<stages::PopulationResult>& results,
                              const rdf::Graph& kg, const onto::Ontology& o) {
    RunMetrics m;
    m.products_total = results.size();
    for (const auto& r : results) {
        if (r.succeeded()) {
            ++m.products_succeeded;
            for (const auto& issue : r.success().conformance) {
                if (issue.severity == onto::Severity::Error) ++m.conformance_errors;
                else ++m.conformance_warnings;
            }
        } else {
            ++m.products_failed;
        }
    }
    if (m.products_total > 0) {
        m.failure_rate = static_cast<double>(m.products_failed) /
                         static_cast<double>(m.products_total);
        m.failure_rate_defined = true;
    }
    m.triples_total = kg.size();
    CoverageResult coverage = property_coverage(kg, o);
    m.properties_total = coverage.total;
    m.properties_instantiated = coverage.instantiated;
    m.property_coverage = coverage.ratio;
    m.property_coverage_defined = coverage.defined;
    m.ontology_stats = onto::ontology_stats(o);
    return m;
}

/// Percentage with one decimal, rounded half-up, computed in integer
/// arithmetic from the counts so 9/291 renders "3.1%" and 67/69 "97.1%".
inline std::string render_percent(size_t numerator, size_t denominator) {
    if (denominator == 0) return "undefined";
    uint64_t tenths = (static_cast<uint64_t>(numerator) * 2000 + denominator) /
                      (2 * static_cast<uint64_t>(denominator));
    return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10) + "%";
}

enum class ReportFormat { Json, Text };

inline nlohmann::ordered_json metrics_to_json(const RunMetrics& m) {
    nlohmann::ordered_json j;
    j["products_total"] = m.products_total;
    j["products_succeeded"] = m.products_succeeded;
    j["products_failed"] = m.products_failed;
    j["failure_rate"] = m.failure_rate;
    j["failure_rate_defined"] = m.failure_rate_defined;
    j["failure_rate_percent"] =
        m.failure_rate_defined ? render_percent(m.products_failed, m.products_total) : "undefined";
    j["triples_total"] = m.triples_total;
    j["properties_total"] = m.properties_total;
    j["properties_instantiated"] = m.properties_instantiated;
    j["property_coverage"] = m.property_coverage;
    j["property_coverage_defined"] = m.property_coverage_defined;
    j["property_coverage_percent"] =
        m.property_coverage_defined ? render_percent(m.properties_instantiated, m.properties_total)
                                    : "undefined";
    j["ontology"] = {{"classes", m.ontology_stats.classes},
                     {"properties", m.ontology_stats.properties},
                     {"datatype_properties", m.ontology_stats.datatype_properties},
                     {"object_properties", m.ontology_stats.object_properties},
                     {"annotated_fraction", m.ontology_stats.annotated_fraction}};
    j["conformance_errors"] = m.conformance_errors;
    j["conformance_warnings"] = m.conformance_warnings;
    return j;
}

inline RunMetrics metrics_from_json(const nlohmann::json& j) {
    RunMetrics m;
    m.products_total = j.at("products_total").get<size_t>();
    m.products_succeeded = j.at("products_succeeded").get<size_t>();
    m.products_failed = j.at("products_failed").get<size_t>();
    m.failure_rate = j.at("failure_rate").get<double>();
    m.failure_rate_defined = j.at("failure_rate_defined").get<bool>();
    m.triples_total = j.at("triples_total").get<size_t>();
    m.properties_total = j.at("properties_total").get<size_t>();
    m.properties_instantiated = j.at("properties_instantiated").get<size_t>();
    m.property_coverage = j.at("property_coverage").get<double>();
    m.property_coverage_defined = j.at("property_coverage_defined").get<bool>();
    const auto& onto_j = j.at("ontology");
    m.ontology_stats.classes = onto_j.at("classes").get<size_t>();
    m.ontology_stats.properties = onto_j.at("properties").get<size_t>();
    m.ontology_stats.datatype_properties = onto_j.at("datatype_properties").get<size_t>();
    m.ontology_stats.object_properties = onto_j.at("object_properties").get<size_t>();
    m.ontology_stats.annotated_fraction = onto_j.at("annotated_fraction").get<double>();
    m.conformance_errors = j.at("conformance_errors").get<size_t>();
    m.conformance_warnings = j.at("conformance_warnings").get<size_t>();
    return m;
}

/// Renders metrics. The json form is stable-key-ordered; the text form is a
/// fixed layout with one measurement per line and percentages at one
/// decimal.
inline std::string render_report(const RunMetrics& m, ReportFormat format) {
    if (format == ReportFormat::Json) return metrics_to_json(m).dump(2) + "\n";

    std::string out;
    out += "products: " + std::to_string(m.products_total) + "\n";
    out += "succeeded: " + std::to_string(m.products_succeeded) + "\n";
    out += "failed: " + std::to_string(m.products_failed) + "\n";
    out += "failure rate: " +
           (m.failure_rate_defined ? render_percent(m.products_failed, m.products_total)
                                   : std::string("undefined")) +
           "\n";
    out += "triples: " + std::to_string(m.triples_total) + "\n";
    out += "coverage: " +
           (m.property_coverage_defined
                ? render_percent(m.properties_instantiated, m.properties_total)
                : std::string("undefined")) +
           " (" + std::to_string(m.properties_instantiated) + "/" +
           std::to_string(m.properties_total) + " properties)\n";
    out += "classes: " + std::to_string(m.ontology_stats.classes) + "\n";
    out += "properties: " + std::to_string(m.ontology_stats.properties) + " (" +
           std::to_string(m.ontology_stats.datatype_properties) + " datatype, " +
           std::to_string(m.ontology_stats.object_properties) + " object)\n";
    out += "conformance errors: " + std::to_string(m.conformance_errors) + "\n";
    out += "conformance warnings: " + std::to_string(m.conformance_warnings) + "\n";
    return out;
}

}  // namespace kgforge
