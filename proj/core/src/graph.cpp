#include "onto/graph.hpp"

#include <algorithm>
#include <vector>

#include "onto/vocab.hpp"

namespace onto {

Graph graph_union(const Graph& a, const Graph& b) {
    Graph out = a;
    for (const auto& t : b) out.insert(t);
    for (const auto& [prefix, ns] : b.prefixes()) {
        if (!out.prefixes().count(prefix)) out.set_prefix(prefix, ns);
    }
    return out;
}

Graph graph_difference(const Graph& a, const Graph& b) {
    Graph out;
    for (const auto& t : a) {
        if (!b.contains(t)) out.insert(t);
    }
    out.set_prefixes(a.prefixes());
    return out;
}

std::vector<Term> objects_of(const Graph& g, const Term& subject,
                             std::string_view predicate_iri) {
    std::vector<Term> out;
    Term pred = Term::iri(std::string(predicate_iri));
    for (const auto& t : g) {
        if (t.subject == subject && t.predicate == pred) out.push_back(t.object);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::string> label_of(const Graph& g, const Term& subject) {
    for (const auto& obj : objects_of(g, subject, vocab::rdfs_label)) {
        if (obj.is_literal()) return obj.value();
    }
    return std::nullopt;
}

}  // namespace onto
