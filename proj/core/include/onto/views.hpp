#ifndef ONTO_VIEWS_HPP
#define ONTO_VIEWS_HPP

#include <optional>
#include <string>
#include <vector>

#include "onto/graph.hpp"
#include "onto/hierarchy.hpp"

namespace onto {

// ---- List view: the whole vocabulary on one page ------------------------------

struct ListViewClass {
    std::string iri;
    std::optional<std::string> label;
    std::optional<std::string> comment;
    std::vector<std::string> super_classes;   // IRI objects of rdfs:subClassOf
    std::vector<std::string> property_iris;   // properties declaring this domain
};

struct ListViewProperty {
    std::string iri;
    PropertyKind kind = PropertyKind::plain_property;
    std::optional<std::string> label;
    std::optional<std::string> comment;
    std::optional<std::string> sub_property_of;
    std::optional<std::string> domain;
    std::optional<std::string> range;
};

// Index of all classes and all properties (each extracted term appears in
// exactly one index; a term that is both class and property is listed as a
// class), with per-term detail panels. Domain-less properties are also
// grouped in a synthetic "(no domain)" bucket.
struct ListViewDocument {
    std::vector<ListViewClass> classes;        // sorted by IRI
    std::vector<ListViewProperty> properties;  // sorted by IRI
    std::vector<std::string> no_domain_properties;
};

ListViewDocument list_view(const Graph& g);
std::string list_view_json(const ListViewDocument& doc);
std::string list_view_html(const ListViewDocument& doc);

// ---- Graph view export (VOWL-style node/edge data) -----------------------------

struct VowlNode {
    std::string iri;
    std::optional<std::string> label;
};

// An edge of the ontology graph: an object property connects two class nodes;
// a datatype property connects a class node to a datatype leaf node.
struct VowlEdge {
    std::string iri;
    std::optional<std::string> label;
    PropertyKind kind = PropertyKind::object_property;
    int domain = -1;  // index into classes
    int range = -1;   // index into classes, or into datatypes for datatype properties
};

struct VowlDocument {
    std::vector<VowlNode> classes;    // every extracted class, sorted by IRI
    std::vector<VowlNode> datatypes;  // leaf nodes for datatype-property ranges
    std::vector<VowlEdge> properties;
};

VowlDocument vowl_export(const Graph& g);
std::string vowl_json(const VowlDocument& doc);

}  // namespace onto

#endif
