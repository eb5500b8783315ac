#ifndef ONTO_GRAPH_HPP
#define ONTO_GRAPH_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "onto/term.hpp"

namespace onto {

// An RDF graph: a set of triples (no duplicates) plus the prefix map of the
// document it came from. Prefix bindings do not affect graph equality.
class Graph {
public:
    using TripleSet = std::set<Triple>;
    using PrefixMap = std::map<std::string, std::string>;  // prefix -> namespace IRI

    Graph() = default;

    bool insert(Triple t) { return triples_.insert(std::move(t)).second; }
    bool erase(const Triple& t) { return triples_.erase(t) > 0; }
    bool contains(const Triple& t) const { return triples_.count(t) > 0; }
    std::size_t size() const noexcept { return triples_.size(); }
    bool empty() const noexcept { return triples_.empty(); }

    TripleSet::const_iterator begin() const { return triples_.begin(); }
    TripleSet::const_iterator end() const { return triples_.end(); }
    const TripleSet& triples() const noexcept { return triples_; }

    void set_prefix(std::string prefix, std::string namespace_iri) {
        prefixes_[std::move(prefix)] = std::move(namespace_iri);
    }
    const PrefixMap& prefixes() const noexcept { return prefixes_; }
    void set_prefixes(PrefixMap p) { prefixes_ = std::move(p); }

    // Triple-set equality; prefix maps are ignored.
    bool operator==(const Graph& other) const { return triples_ == other.triples_; }

private:
    TripleSet triples_;
    PrefixMap prefixes_;
};

Graph graph_union(const Graph& a, const Graph& b);
Graph graph_difference(const Graph& a, const Graph& b);

// Objects of `predicate` triples with the given subject, in term order.
std::vector<Term> objects_of(const Graph& g, const Term& subject, std::string_view predicate_iri);

// First rdfs:label literal of the subject, if any (smallest in term order).
std::optional<std::string> label_of(const Graph& g, const Term& subject);

}  // namespace onto

#endif
