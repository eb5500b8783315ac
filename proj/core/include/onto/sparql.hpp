#ifndef ONTO_SPARQL_HPP
#define ONTO_SPARQL_HPP

#include <chrono>
#include <map>
#include <string>
#include <vector>

#include "onto/quad_store.hpp"
#include "onto/term.hpp"

namespace onto {

using SparqlRow = std::map<std::string, Term>;  // variable name (no '?') -> term

struct SparqlResults {
    std::vector<std::string> vars;
    std::vector<SparqlRow> rows;
};

// A SELECT-query transport. Implementations: HTTP to a live endpoint, or the
// embedded evaluator for offline runs against a local store.
class SparqlClient {
public:
    virtual ~SparqlClient() = default;
    virtual SparqlResults select(const std::string& query) = 0;
};

// SPARQL 1.1 Protocol over HTTP: the query goes out as a form-encoded POST
// (with a GET fallback when the server rejects the method), results come back
// as application/sparql-results+json.
class HttpSparqlClient : public SparqlClient {
public:
    HttpSparqlClient(std::string endpoint_url,
                     std::chrono::milliseconds timeout = std::chrono::milliseconds(30000));
    SparqlResults select(const std::string& query) override;

private:
    std::string endpoint_url_;
    std::chrono::milliseconds timeout_;
};

// Evaluates the validator's query subset directly over an embedded store.
class LocalSparqlClient : public SparqlClient {
public:
    explicit LocalSparqlClient(const QuadStore& store) : store_(&store) {}
    SparqlResults select(const std::string& query) override;

private:
    const QuadStore* store_;
};

// The SELECT subset the validator emits: a single GRAPH-scoped triple
// pattern, optional VALUES over the graph variable, optional COUNT aggregate
// with GROUP BY, DISTINCT, ORDER BY one variable, LIMIT/OFFSET.
SparqlResults evaluate_sparql_subset(const QuadStore& store, const std::string& query);

// application/sparql-results+json codec.
std::string sparql_results_to_json(const SparqlResults& results);
SparqlResults sparql_results_from_json(const std::string& body);

}  // namespace onto

#endif
