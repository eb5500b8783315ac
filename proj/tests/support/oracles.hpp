#ifndef ONTOSERVE_TESTS_ORACLES_HPP
#define ONTOSERVE_TESTS_ORACLES_HPP

// Brute-force reference implementations the tests check the real code
// against. Deliberately naive: fixpoint iteration and full enumeration
// instead of the algorithms used by the library.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "onto/graph.hpp"
#include "onto/quad_store.hpp"
#include "onto/term.hpp"
#include "onto/vocab.hpp"

namespace test_support {

// Blank-node isomorphism by full permutation enumeration. Keep blank counts
// small (<= 7) where this is used.
inline bool iso_oracle(const onto::Graph& a, const onto::Graph& b) {
    auto labels = [](const onto::Graph& g) {
        std::set<std::string> out;
        for (const auto& t : g) {
            if (t.subject.is_blank()) out.insert(t.subject.value());
            if (t.object.is_blank()) out.insert(t.object.value());
        }
        return std::vector<std::string>(out.begin(), out.end());
    };
    if (a.size() != b.size()) return false;
    auto la = labels(a);
    auto lb = labels(b);
    if (la.size() != lb.size()) return false;

    std::vector<std::size_t> perm(lb.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    do {
        std::map<std::string, std::string> mapping;
        for (std::size_t i = 0; i < la.size(); ++i) mapping[la[i]] = lb[perm[i]];
        std::set<onto::Triple> renamed;
        for (const auto& t : a) {
            onto::Triple r = t;
            if (r.subject.is_blank()) r.subject = onto::Term::blank(mapping[r.subject.value()]);
            if (r.object.is_blank()) r.object = onto::Term::blank(mapping[r.object.value()]);
            renamed.insert(r);
        }
        if (renamed == b.triples()) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return la.empty() && a.triples() == b.triples();
}

// Pattern matching by linear scan over a caller-maintained quad list.
inline std::set<onto::Quad> match_oracle(const std::vector<onto::Quad>& quads,
                                         const onto::QuadPattern& p) {
    std::set<onto::Quad> out;
    for (const auto& q : quads) {
        if (p.graph && (!q.graph || *q.graph != *p.graph)) continue;
        if (p.subject && q.triple.subject != *p.subject) continue;
        if (p.predicate && q.triple.predicate != *p.predicate) continue;
        if (p.object && q.triple.object != *p.object) continue;
        out.insert(q);
    }
    return out;
}

inline std::set<std::string> declared_classes_oracle(const onto::Graph& g) {
    std::set<std::string> out;
    for (const auto& t : g) {
        if (t.predicate.value() == onto::vocab::rdf_type && t.subject.is_iri() &&
            (t.object.value() == onto::vocab::owl_class ||
             t.object.value() == onto::vocab::rdfs_class))
            out.insert(t.subject.value());
    }
    return out;
}

// Superclass closure by fixpoint iteration over the raw triple list.
inline std::set<onto::Term> superclass_closure_oracle(const onto::Graph& g) {
    std::set<onto::Term> reach;
    for (const auto& c : declared_classes_oracle(g)) reach.insert(onto::Term::iri(c));
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& t : g) {
            if (t.predicate.value() != onto::vocab::rdfs_sub_class_of) continue;
            if (t.object.is_literal()) continue;
            if (reach.count(t.subject) && !reach.count(t.object)) {
                reach.insert(t.object);
                changed = true;
            }
        }
    }
    return reach;
}

inline std::set<std::string> top_level_oracle(const onto::Graph& g) {
    std::set<std::string> out;
    for (const auto& node : superclass_closure_oracle(g)) {
        if (!node.is_iri()) continue;
        bool has_out = false;
        for (const auto& t : g) {
            if (t.predicate.value() == onto::vocab::rdfs_sub_class_of && t.subject == node) {
                has_out = true;
                break;
            }
        }
        if (!has_out) out.insert(node.value());
    }
    return out;
}

inline std::set<std::string> children_oracle(const onto::Graph& g, const std::string& iri) {
    std::set<std::string> out;
    for (const auto& t : g) {
        if (t.predicate.value() == onto::vocab::rdfs_sub_class_of && t.subject.is_iri() &&
            t.object == onto::Term::iri(iri))
            out.insert(t.subject.value());
    }
    return out;
}

// Every class that should appear somewhere in the class forest: reachable
// from the top-level set via repeated one-step children expansion.
inline std::set<std::string> tree_nodes_oracle(const onto::Graph& g) {
    std::set<std::string> nodes = top_level_oracle(g);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& n : std::set<std::string>(nodes)) {
            for (const auto& c : children_oracle(g, n)) {
                if (nodes.insert(c).second) changed = true;
            }
        }
    }
    return nodes;
}

// Minimal superclass distances by iterated relaxation.
inline std::map<std::string, int> ancestor_distance_oracle(const onto::Graph& g,
                                                           const std::string& start) {
    std::map<onto::Term, int> dist;
    dist[onto::Term::iri(start)] = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& t : g) {
            if (t.predicate.value() != onto::vocab::rdfs_sub_class_of) continue;
            if (t.object.is_literal()) continue;
            auto it = dist.find(t.subject);
            if (it == dist.end()) continue;
            int candidate = it->second + 1;
            auto [jt, inserted] = dist.emplace(t.object, candidate);
            if (!inserted && candidate < jt->second) {
                jt->second = candidate;
                changed = true;
            } else if (inserted) {
                changed = true;
            }
        }
    }
    std::map<std::string, int> out;
    for (const auto& [term, d] : dist) {
        if (term.is_iri() && d > 0 && term.value() != start) out[term.value()] = d;
    }
    return out;
}

inline std::set<std::string> domain_properties_oracle(const onto::Graph& g,
                                                      const std::string& class_iri) {
    std::set<std::string> out;
    for (const auto& t : g) {
        if (t.predicate.value() == onto::vocab::rdfs_domain && t.subject.is_iri() &&
            t.object == onto::Term::iri(class_iri))
            out.insert(t.subject.value());
    }
    return out;
}

// One-pass schema term scan (validator's Figure-8 step 1-2 contract).
inline void schema_terms_oracle(const onto::Graph& g, std::set<std::string>& classes,
                                std::set<std::string>& properties) {
    classes = declared_classes_oracle(g);
    std::set<std::string> declared_props;
    for (const auto& t : g) {
        if (t.predicate.value() != onto::vocab::rdf_type || !t.subject.is_iri()) continue;
        const auto& ty = t.object.value();
        if (ty == onto::vocab::owl_object_property || ty == onto::vocab::owl_datatype_property ||
            ty == onto::vocab::owl_annotation_property || ty == onto::vocab::rdf_property)
            declared_props.insert(t.subject.value());
    }
    std::set<std::string> extra_classes, extra_props;
    for (const auto& t : g) {
        if (!t.subject.is_iri() || !t.object.is_iri()) continue;
        if (t.predicate.value() == onto::vocab::rdfs_sub_class_of &&
            classes.count(t.subject.value()))
            extra_classes.insert(t.object.value());
        if (t.predicate.value() == onto::vocab::rdfs_sub_property_of &&
            declared_props.count(t.subject.value()))
            extra_props.insert(t.object.value());
    }
    classes.insert(extra_classes.begin(), extra_classes.end());
    properties = declared_props;
    properties.insert(extra_props.begin(), extra_props.end());
}

// Usage counting over a raw quad list, restricted to the target graphs:
// per-class distinct typed subjects, per-property statement counts.
struct UsageOracle {
    std::map<std::string, long> class_counts;
    std::map<std::string, long> property_counts;
};

inline UsageOracle usage_oracle(const std::vector<onto::Quad>& quads,
                                const std::set<std::string>& target_graphs) {
    UsageOracle out;
    std::map<std::string, std::set<onto::Term>> class_subjects;
    for (const auto& q : quads) {
        if (!q.graph || !target_graphs.count(q.graph->value())) continue;
        if (q.triple.predicate.is_iri()) ++out.property_counts[q.triple.predicate.value()];
        if (q.triple.predicate.value() == onto::vocab::rdf_type && q.triple.object.is_iri())
            class_subjects[q.triple.object.value()].insert(q.triple.subject);
    }
    for (const auto& [cls, subjects] : class_subjects)
        out.class_counts[cls] = static_cast<long>(subjects.size());
    return out;
}

}  // namespace test_support

#endif
