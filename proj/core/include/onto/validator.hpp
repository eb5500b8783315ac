#ifndef ONTO_VALIDATOR_HPP
#define ONTO_VALIDATOR_HPP

#include <chrono>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "onto/registry.hpp"
#include "onto/schema_terms.hpp"
#include "onto/sparql.hpp"

namespace onto {

// A SPARQL endpoint plus the target graphs a statistics or validation job
// runs over. endpoint_url "local:" addresses the registry's own store through
// the embedded evaluator (offline mode).
struct EndpointSession {
    std::string endpoint_url;
    std::vector<std::string> target_graphs;
    std::chrono::milliseconds timeout{30000};
    int page_size = 1000;
};

// Per-term usage counts over the target graphs: instances per class (distinct
// typed subjects) and statements per property, both sorted by count
// descending with ties broken by IRI.
struct StatsReport {
    std::vector<std::pair<std::string, long>> class_usage;
    std::vector<std::pair<std::string, long>> property_usage;
    std::set<std::string> graphs_covered;
};

struct TermVerdict {
    std::string iri;
    long usage = 0;
    bool defined = false;
};

struct ValidationReport {
    std::vector<TermVerdict> class_verdicts;
    std::vector<TermVerdict> property_verdicts;
    std::string ontology_iri;
    std::set<std::string> graphs_covered;
};

// Terms in the rdf:, rdfs:, owl: and xsd: namespaces count as defined even
// when the validated ontology does not declare them.
bool core_vocabulary_term(std::string_view iri);

// The Ontology Validation Center: graph enumeration, usage statistics, and
// term validation against a registered ontology, all through a SPARQL
// endpoint client.
class Validator {
public:
    using ClientFactory =
        std::function<std::unique_ptr<SparqlClient>(const EndpointSession& session)>;

    explicit Validator(const Registry& registry);
    Validator(const Registry& registry, ClientFactory factory);

    // The distinct graph names at the endpoint.
    std::set<std::string> enumerate_graphs(const EndpointSession& session) const;

    // Classes (objects of rdf:type) and properties (statement predicates)
    // used in the target graphs.
    SchemaTerms used_terms(const EndpointSession& session) const;

    StatsReport stats(const EndpointSession& session) const;

    // ontology: a registered prefix, a record IRI, or a source-graph IRI; the
    // latest version is validated against.
    ValidationReport validate(const EndpointSession& session, const std::string& ontology) const;

private:
    std::unique_ptr<SparqlClient> client_for(const EndpointSession& session) const;
    Graph resolve_ontology(const std::string& ontology, std::string& ontology_iri) const;

    const Registry* registry_;
    ClientFactory factory_;
};

// Report renderings: JSON bodies and aligned-column text tables with an
// ok/FAIL verdict column.
std::string stats_report_json(const StatsReport& report);
std::string stats_report_table(const StatsReport& report);
std::string validation_report_json(const ValidationReport& report);
std::string validation_report_table(const ValidationReport& report);

}  // namespace onto

#endif
