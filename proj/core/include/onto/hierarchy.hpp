#ifndef ONTO_HIERARCHY_HPP
#define ONTO_HIERARCHY_HPP

#include <optional>
#include <string>
#include <vector>

#include "onto/graph.hpp"
#include "onto/schema_terms.hpp"

namespace onto {

// A class with an optional label, as produced by the hierarchy queries.
struct ClassRef {
    std::string iri;
    std::optional<std::string> label;

    bool operator==(const ClassRef&) const = default;
};

struct ClassTreeNode {
    std::string class_iri;
    std::optional<std::string> label;
    std::vector<ClassTreeNode> children;  // sorted ascending by IRI
    // True when this child closes a subclass cycle; such a node is shown but
    // not expanded.
    bool cycle_backedge = false;
};

// One row of the Figure-5-style property table.
struct PropertyEntry {
    std::string property_iri;
    PropertyKind kind = PropertyKind::plain_property;
    std::optional<std::string> sub_property_of;
    std::optional<std::string> label;
    std::optional<std::string> domain;
    std::optional<std::string> range;
};

// Properties contributed by one ancestor class, at its minimal superclass
// distance ("up one level", "upper two levels", ...).
struct InheritanceLevel {
    std::string ancestor_class;
    int distance = 1;
    std::vector<PropertyEntry> properties;  // never empty
};

// Classes with no outgoing rdfs:subClassOf edge, drawn from the declared
// classes and everything reachable from them as a (transitive) superclass.
// Ordered ascending by IRI string.
std::vector<ClassRef> top_level_classes(const Graph& g);

// Direct subclasses of a class; blank-node subclasses are excluded.
std::vector<ClassRef> subclass_children(const Graph& g, const std::string& class_iri);

// The full class forest: top-level classes expanded recursively. A class with
// several parents appears under each of them; a class that reappears on its
// own ancestry path becomes a cycle_backedge leaf, which bounds the
// recursion on cyclic inputs.
std::vector<ClassTreeNode> class_tree(const Graph& g);

// Properties whose rdfs:domain includes the class, sorted by property IRI.
std::vector<PropertyEntry> declared_properties(const Graph& g, const std::string& class_iri);

// Breadth-first walk up rdfs:subClassOf; each ancestor contributes a level at
// its minimal distance iff it declares at least one property. Ordered by
// (distance, IRI).
std::vector<InheritanceLevel> inherited_properties(const Graph& g,
                                                   const std::string& class_iri);

// Exports.
std::string class_tree_text(const std::vector<ClassTreeNode>& forest);
std::string class_tree_json(const std::vector<ClassTreeNode>& forest);

}  // namespace onto

#endif
