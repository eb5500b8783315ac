#ifndef ONTO_SCHEMA_TERMS_HPP
#define ONTO_SCHEMA_TERMS_HPP

#include <set>
#include <string>

#include "onto/graph.hpp"

namespace onto {

// The class and property IRIs an ontology graph defines. The sets are not
// required to be disjoint.
struct SchemaTerms {
    std::set<std::string> classes;
    std::set<std::string> properties;
};

// classes: IRIs declared owl:Class or rdfs:Class, plus IRIs appearing as
// rdfs:subClassOf objects of declared classes. properties: IRIs declared
// owl:ObjectProperty, owl:DatatypeProperty, owl:AnnotationProperty or
// rdf:Property, plus IRIs appearing as rdfs:subPropertyOf objects of declared
// properties.
SchemaTerms extract_schema_terms(const Graph& g);

enum class PropertyKind { object_property, datatype_property, annotation_property, plain_property };

// Kind from the property's declared rdf:type (object > datatype > annotation
// when several are declared; plain-property otherwise).
PropertyKind property_kind(const Graph& g, const std::string& property_iri);

const char* property_kind_name(PropertyKind kind);

}  // namespace onto

#endif
