#ifndef ONTO_VOCAB_HPP
#define ONTO_VOCAB_HPP

#include <string_view>

// IRI constants for the vocabularies the datahub interprets.
namespace onto::vocab {

inline constexpr std::string_view rdf_ns = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view rdfs_ns = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view owl_ns = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view xsd_ns = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view dc_ns = "http://purl.org/dc/terms/";
inline constexpr std::string_view cc_ns = "http://creativecommons.org/ns#";

inline constexpr std::string_view rdf_type = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view rdf_first = "http://www.w3.org/1999/02/22-rdf-syntax-ns#first";
inline constexpr std::string_view rdf_rest = "http://www.w3.org/1999/02/22-rdf-syntax-ns#rest";
inline constexpr std::string_view rdf_nil = "http://www.w3.org/1999/02/22-rdf-syntax-ns#nil";
inline constexpr std::string_view rdf_property = "http://www.w3.org/1999/02/22-rdf-syntax-ns#Property";
inline constexpr std::string_view rdf_lang_string =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";

inline constexpr std::string_view rdfs_class = "http://www.w3.org/2000/01/rdf-schema#Class";
inline constexpr std::string_view rdfs_sub_class_of =
    "http://www.w3.org/2000/01/rdf-schema#subClassOf";
inline constexpr std::string_view rdfs_sub_property_of =
    "http://www.w3.org/2000/01/rdf-schema#subPropertyOf";
inline constexpr std::string_view rdfs_label = "http://www.w3.org/2000/01/rdf-schema#label";
inline constexpr std::string_view rdfs_comment = "http://www.w3.org/2000/01/rdf-schema#comment";
inline constexpr std::string_view rdfs_domain = "http://www.w3.org/2000/01/rdf-schema#domain";
inline constexpr std::string_view rdfs_range = "http://www.w3.org/2000/01/rdf-schema#range";
inline constexpr std::string_view rdfs_resource = "http://www.w3.org/2000/01/rdf-schema#Resource";
inline constexpr std::string_view rdfs_literal = "http://www.w3.org/2000/01/rdf-schema#Literal";

inline constexpr std::string_view owl_class = "http://www.w3.org/2002/07/owl#Class";
inline constexpr std::string_view owl_ontology = "http://www.w3.org/2002/07/owl#Ontology";
inline constexpr std::string_view owl_object_property =
    "http://www.w3.org/2002/07/owl#ObjectProperty";
inline constexpr std::string_view owl_datatype_property =
    "http://www.w3.org/2002/07/owl#DatatypeProperty";
inline constexpr std::string_view owl_annotation_property =
    "http://www.w3.org/2002/07/owl#AnnotationProperty";
inline constexpr std::string_view owl_version_info = "http://www.w3.org/2002/07/owl#versionInfo";

inline constexpr std::string_view xsd_string = "http://www.w3.org/2001/XMLSchema#string";
inline constexpr std::string_view xsd_integer = "http://www.w3.org/2001/XMLSchema#integer";
inline constexpr std::string_view xsd_decimal = "http://www.w3.org/2001/XMLSchema#decimal";
inline constexpr std::string_view xsd_double = "http://www.w3.org/2001/XMLSchema#double";
inline constexpr std::string_view xsd_boolean = "http://www.w3.org/2001/XMLSchema#boolean";

// Registry metadata properties (dc: resolves to DCMI Terms).
inline constexpr std::string_view dc_title = "http://purl.org/dc/terms/title";
inline constexpr std::string_view dc_description = "http://purl.org/dc/terms/description";
inline constexpr std::string_view dc_rights = "http://purl.org/dc/terms/rights";
inline constexpr std::string_view dc_issued = "http://purl.org/dc/terms/issued";
inline constexpr std::string_view dc_source = "http://purl.org/dc/terms/source";
inline constexpr std::string_view dc_contributor = "http://purl.org/dc/terms/contributor";
inline constexpr std::string_view dc_subject = "http://purl.org/dc/terms/subject";
inline constexpr std::string_view cc_license = "http://creativecommons.org/ns#license";

}  // namespace onto::vocab

#endif
