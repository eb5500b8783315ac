#include "onto/hierarchy.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "detail/text.hpp"
#include "onto/vocab.hpp"

namespace onto {

namespace {

Term iri(std::string_view s) { return Term::iri(std::string(s)); }

bool is_class_declaration(const Triple& t) {
    return t.predicate.value() == vocab::rdf_type &&
           (t.object.value() == vocab::owl_class || t.object.value() == vocab::rdfs_class) &&
           t.object.is_iri();
}

// subject -> superclass objects (any term kind), from rdfs:subClassOf.
std::map<Term, std::vector<Term>> subclass_edges(const Graph& g) {
    std::map<Term, std::vector<Term>> out;
    for (const auto& t : g) {
        if (t.predicate.value() == vocab::rdfs_sub_class_of) out[t.subject].push_back(t.object);
    }
    return out;
}

}  // namespace

SchemaTerms extract_schema_terms(const Graph& g) {
    SchemaTerms out;
    std::set<std::string> declared_properties;
    for (const auto& t : g) {
        if (t.predicate.value() != vocab::rdf_type || !t.subject.is_iri()) continue;
        const std::string& type = t.object.value();
        if (type == vocab::owl_class || type == vocab::rdfs_class) {
            out.classes.insert(t.subject.value());
        } else if (type == vocab::owl_object_property || type == vocab::owl_datatype_property ||
                   type == vocab::owl_annotation_property || type == vocab::rdf_property) {
            declared_properties.insert(t.subject.value());
        }
    }
    out.properties = declared_properties;
    // Collected separately: only type-declared subjects contribute their
    // superclass / superproperty objects.
    std::set<std::string> super_classes, super_properties;
    for (const auto& t : g) {
        if (!t.object.is_iri() || !t.subject.is_iri()) continue;
        if (t.predicate.value() == vocab::rdfs_sub_class_of &&
            out.classes.count(t.subject.value())) {
            super_classes.insert(t.object.value());
        } else if (t.predicate.value() == vocab::rdfs_sub_property_of &&
                   declared_properties.count(t.subject.value())) {
            super_properties.insert(t.object.value());
        }
    }
    out.classes.insert(super_classes.begin(), super_classes.end());
    out.properties.insert(super_properties.begin(), super_properties.end());
    return out;
}

PropertyKind property_kind(const Graph& g, const std::string& property_iri) {
    bool object = false, datatype = false, annotation = false;
    for (const auto& o : objects_of(g, iri(property_iri), vocab::rdf_type)) {
        if (!o.is_iri()) continue;
        if (o.value() == vocab::owl_object_property) object = true;
        if (o.value() == vocab::owl_datatype_property) datatype = true;
        if (o.value() == vocab::owl_annotation_property) annotation = true;
    }
    if (object) return PropertyKind::object_property;
    if (datatype) return PropertyKind::datatype_property;
    if (annotation) return PropertyKind::annotation_property;
    return PropertyKind::plain_property;
}

const char* property_kind_name(PropertyKind kind) {
    switch (kind) {
        case PropertyKind::object_property: return "object-property";
        case PropertyKind::datatype_property: return "datatype-property";
        case PropertyKind::annotation_property: return "annotation-property";
        case PropertyKind::plain_property: return "plain-property";
    }
    return "unknown";
}

std::vector<ClassRef> top_level_classes(const Graph& g) {
    std::set<Term> declared;
    for (const auto& t : g) {
        if (is_class_declaration(t) && t.subject.is_iri()) declared.insert(t.subject);
    }
    auto edges = subclass_edges(g);

    // Everything reachable from a declared class via zero-or-more
    // rdfs:subClassOf steps; paths may pass through blank nodes but only IRIs
    // become candidates.
    std::set<Term> visited;
    std::deque<Term> frontier(declared.begin(), declared.end());
    for (const auto& c : declared) visited.insert(c);
    std::set<std::string> candidates;
    while (!frontier.empty()) {
        Term node = frontier.front();
        frontier.pop_front();
        if (node.is_iri()) candidates.insert(node.value());
        auto it = edges.find(node);
        if (it == edges.end()) continue;
        for (const auto& super : it->second) {
            if (super.is_literal()) continue;
            if (visited.insert(super).second) frontier.push_back(super);
        }
    }

    std::vector<ClassRef> out;
    for (const auto& c : candidates) {
        if (edges.count(Term::iri(c))) continue;  // has an outgoing subClassOf edge
        out.push_back({c, label_of(g, Term::iri(c))});
    }
    // candidates is an ordered set, so `out` is already ascending by IRI.
    return out;
}

std::vector<ClassRef> subclass_children(const Graph& g, const std::string& class_iri) {
    std::set<std::string> subs;
    Term target = iri(class_iri);
    for (const auto& t : g) {
        if (t.predicate.value() == vocab::rdfs_sub_class_of && t.object == target &&
            t.subject.is_iri())
            subs.insert(t.subject.value());
    }
    std::vector<ClassRef> out;
    for (const auto& s : subs) out.push_back({s, label_of(g, Term::iri(s))});
    return out;
}

namespace {

ClassTreeNode expand_node(const Graph& g, const ClassRef& cls, std::set<std::string>& path) {
    ClassTreeNode node;
    node.class_iri = cls.iri;
    node.label = cls.label;
    path.insert(cls.iri);
    for (const auto& child : subclass_children(g, cls.iri)) {
        if (path.count(child.iri)) {
            ClassTreeNode cut;
            cut.class_iri = child.iri;
            cut.label = child.label;
            cut.cycle_backedge = true;
            node.children.push_back(std::move(cut));
        } else {
            node.children.push_back(expand_node(g, child, path));
        }
    }
    path.erase(cls.iri);
    return node;
}

}  // namespace

std::vector<ClassTreeNode> class_tree(const Graph& g) {
    std::vector<ClassTreeNode> forest;
    for (const auto& root : top_level_classes(g)) {
        std::set<std::string> path;
        forest.push_back(expand_node(g, root, path));
    }
    return forest;
}

std::vector<PropertyEntry> declared_properties(const Graph& g, const std::string& class_iri) {
    std::set<std::string> props;
    Term target = iri(class_iri);
    for (const auto& t : g) {
        if (t.predicate.value() == vocab::rdfs_domain && t.object == target &&
            t.subject.is_iri())
            props.insert(t.subject.value());
    }
    std::vector<PropertyEntry> out;
    for (const auto& p : props) {
        PropertyEntry entry;
        entry.property_iri = p;
        entry.kind = property_kind(g, p);
        entry.label = label_of(g, Term::iri(p));
        entry.domain = class_iri;
        for (const auto& o : objects_of(g, Term::iri(p), vocab::rdfs_sub_property_of)) {
            if (o.is_iri()) {
                entry.sub_property_of = o.value();
                break;
            }
        }
        for (const auto& o : objects_of(g, Term::iri(p), vocab::rdfs_range)) {
            if (o.is_iri()) {
                entry.range = o.value();
                break;
            }
        }
        out.push_back(std::move(entry));
    }
    return out;
}

std::vector<InheritanceLevel> inherited_properties(const Graph& g,
                                                   const std::string& class_iri) {
    auto edges = subclass_edges(g);

    // Shortest superclass distance for each IRI ancestor.
    std::map<std::string, int> distance;
    std::deque<std::pair<Term, int>> frontier;
    frontier.emplace_back(iri(class_iri), 0);
    std::set<Term> visited{iri(class_iri)};
    while (!frontier.empty()) {
        auto [node, d] = frontier.front();
        frontier.pop_front();
        auto it = edges.find(node);
        if (it == edges.end()) continue;
        for (const auto& super : it->second) {
            if (super.is_literal() || !visited.insert(super).second) continue;
            if (super.is_iri() && super.value() != class_iri)
                distance.emplace(super.value(), d + 1);
            frontier.emplace_back(super, d + 1);
        }
    }

    std::vector<std::pair<int, std::string>> ordered;
    for (const auto& [ancestor, d] : distance) ordered.emplace_back(d, ancestor);
    std::sort(ordered.begin(), ordered.end());

    std::vector<InheritanceLevel> out;
    for (const auto& [d, ancestor] : ordered) {
        auto props = declared_properties(g, ancestor);
        if (props.empty()) continue;  // ancestors with no properties are not rendered
        InheritanceLevel level;
        level.ancestor_class = ancestor;
        level.distance = d;
        level.properties = std::move(props);
        out.push_back(std::move(level));
    }
    return out;
}

namespace {

void append_tree_text(const ClassTreeNode& node, int depth, std::string& out) {
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
    out += node.class_iri;
    if (node.label) out += " (" + *node.label + ")";
    if (node.cycle_backedge) out += " [cycle]";
    out += '\n';
    for (const auto& child : node.children) append_tree_text(child, depth + 1, out);
}

nlohmann::json tree_to_json(const ClassTreeNode& node) {
    nlohmann::json j;
    j["iri"] = node.class_iri;
    if (node.label) j["label"] = *node.label;
    j["cycle"] = node.cycle_backedge;
    auto children = nlohmann::json::array();
    for (const auto& child : node.children) children.push_back(tree_to_json(child));
    j["children"] = std::move(children);
    return j;
}

}  // namespace

std::string class_tree_text(const std::vector<ClassTreeNode>& forest) {
    std::string out;
    for (const auto& root : forest) append_tree_text(root, 0, out);
    return out;
}

std::string class_tree_json(const std::vector<ClassTreeNode>& forest) {
    auto arr = nlohmann::json::array();
    for (const auto& root : forest) arr.push_back(tree_to_json(root));
    return arr.dump(2) + "\n";
}

}  // namespace onto
