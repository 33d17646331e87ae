#pragma once
// Well-known RDF vocabulary namespaces and the handful of terms used
// throughout the schema layer.

#include <string>
#include <string_view>

namespace kgforge::rdf::vocab {

inline constexpr std::string_view RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view RDFS = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view OWL = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view XSD = "http://www.w3.org/2001/XMLSchema#";

inline std::string rdf(std::string_view local) { return std::string(RDF) + std::string(local); }
inline std::string rdfs(std::string_view local) { return std::string(RDFS) + std::string(local); }
inline std::string owl(std::string_view local) { return std::string(OWL) + std::string(local); }
inline std::string xsd(std::string_view local) { return std::string(XSD) + std::string(local); }

inline const std::string rdf_type = rdf("type");
inline const std::string rdf_property = rdf("Property");
inline const std::string rdf_lang_string = rdf("langString");
inline const std::string rdfs_class = rdfs("Class");
inline const std::string rdfs_sub_class_of = rdfs("subClassOf");
inline const std::string rdfs_domain = rdfs("domain");
inline const std::string rdfs_range = rdfs("range");
inline const std::string rdfs_label = rdfs("label");
inline const std::string rdfs_comment = rdfs("comment");
inline const std::string owl_class = owl("Class");
inline const std::string owl_ontology = owl("Ontology");
inline const std::string owl_datatype_property = owl("DatatypeProperty");
inline const std::string owl_object_property = owl("ObjectProperty");
inline const std::string xsd_string = xsd("string");
inline const std::string xsd_integer = xsd("integer");
inline const std::string xsd_decimal = xsd("decimal");
inline const std::string xsd_boolean = xsd("boolean");

// True when `iri` lives in one of the namespaces above. Used to recognize
// external references that need no local declaration.
inline bool is_builtin_namespace(std::string_view iri) {
    return iri.starts_with(RDF) || iri.starts_with(RDFS) || iri.starts_with(OWL) ||
           iri.starts_with(XSD);
}

inline bool in_namespace(std::string_view iri, std::string_view ns) {
    return iri.starts_with(ns);
}

}  // namespace kgforge::rdf::vocab
