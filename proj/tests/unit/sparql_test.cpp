#include <doctest.h>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "onto/error.hpp"
#include "onto/mock_endpoint.hpp"
#include "onto/quad_store.hpp"
#include "onto/sparql.hpp"
#include "onto/vocab.hpp"
#include "oracles.hpp"
#include "temp_dir.hpp"

using namespace onto;
using test_support::TempDir;

namespace {

const char* kType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

struct SeededStore {
    TempDir dir;
    QuadStore store;
    std::vector<Quad> quads;

    SeededStore() : store(dir.path) { quads = test_support::seed_cbdb_endpoint(store, 4); }
};

}  // namespace

TEST_CASE("graph enumeration query lists all named graphs") {
    SeededStore seeded;
    auto results = evaluate_sparql_subset(
        seeded.store, "SELECT DISTINCT ?g WHERE { GRAPH ?g { ?s ?p ?o } } ORDER BY ?g");
    std::set<std::string> got;
    for (const auto& row : results.rows) got.insert(row.at("g").value());
    std::set<std::string> expected;
    for (const auto& q : seeded.quads) expected.insert(q.graph->value());
    CHECK(got == expected);
    // Ordered ascending.
    for (std::size_t i = 1; i < results.rows.size(); ++i)
        CHECK(results.rows[i - 1].at("g").value() < results.rows[i].at("g").value());
}

TEST_CASE("VALUES restricts the graph variable") {
    SeededStore seeded;
    std::string q = "SELECT DISTINCT ?c WHERE { VALUES ?g { <" +
                    std::string(test_support::kCbdbTargetGraph) + "> } GRAPH ?g { ?s <" + kType +
                    "> ?c } } ORDER BY ?c";
    auto results = evaluate_sparql_subset(seeded.store, q);
    auto oracle =
        test_support::usage_oracle(seeded.quads, {test_support::kCbdbTargetGraph});
    CHECK(results.rows.size() == oracle.class_counts.size());
    for (const auto& row : results.rows)
        CHECK(oracle.class_counts.count(row.at("c").value()) == 1);
}

TEST_CASE("COUNT DISTINCT subjects per class matches brute force") {
    SeededStore seeded;
    std::string q = "SELECT ?c (COUNT(DISTINCT ?s) AS ?n) WHERE { VALUES ?g { <" +
                    std::string(test_support::kCbdbTargetGraph) + "> } GRAPH ?g { ?s <" + kType +
                    "> ?c } } GROUP BY ?c ORDER BY ?c";
    auto results = evaluate_sparql_subset(seeded.store, q);
    auto oracle =
        test_support::usage_oracle(seeded.quads, {test_support::kCbdbTargetGraph});
    REQUIRE(results.rows.size() == oracle.class_counts.size());
    for (const auto& row : results.rows) {
        long n = std::stol(row.at("n").value());
        CHECK(n == oracle.class_counts.at(row.at("c").value()));
    }
}

TEST_CASE("COUNT(*) per predicate matches brute force") {
    SeededStore seeded;
    std::string q = "SELECT ?p (COUNT(*) AS ?n) WHERE { VALUES ?g { <" +
                    std::string(test_support::kCbdbTargetGraph) +
                    "> } GRAPH ?g { ?s ?p ?o } } GROUP BY ?p ORDER BY ?p";
    auto results = evaluate_sparql_subset(seeded.store, q);
    auto oracle =
        test_support::usage_oracle(seeded.quads, {test_support::kCbdbTargetGraph});
    REQUIRE(results.rows.size() == oracle.property_counts.size());
    for (const auto& row : results.rows) {
        long n = std::stol(row.at("n").value());
        CHECK(n == oracle.property_counts.at(row.at("p").value()));
    }
}

TEST_CASE("LIMIT/OFFSET paging covers the whole result set exactly once") {
    SeededStore seeded;
    std::string base = "SELECT DISTINCT ?p WHERE { VALUES ?g { <" +
                       std::string(test_support::kCbdbTargetGraph) +
                       "> } GRAPH ?g { ?s ?p ?o } } ORDER BY ?p";
    auto full = evaluate_sparql_subset(seeded.store, base);
    std::vector<std::string> paged;
    for (long offset = 0;; offset += 3) {
        auto page = evaluate_sparql_subset(
            seeded.store, base + " LIMIT 3 OFFSET " + std::to_string(offset));
        for (const auto& row : page.rows) paged.push_back(row.at("p").value());
        if (page.rows.size() < 3) break;
    }
    std::vector<std::string> expected;
    for (const auto& row : full.rows) expected.push_back(row.at("p").value());
    CHECK(paged == expected);
}

TEST_CASE("fixed graph IRI instead of a variable") {
    SeededStore seeded;
    std::string q = "SELECT DISTINCT ?p WHERE { GRAPH <" +
                    std::string(test_support::kCbdbTargetGraph) +
                    "> { ?s ?p ?o } } ORDER BY ?p";
    auto results = evaluate_sparql_subset(seeded.store, q);
    auto oracle =
        test_support::usage_oracle(seeded.quads, {test_support::kCbdbTargetGraph});
    CHECK(results.rows.size() == oracle.property_counts.size());
}

TEST_CASE("unsupported queries are rejected, not misinterpreted") {
    SeededStore seeded;
    for (const char* bad : {
             "SELECT ?s WHERE { ?s ?p ?o }",                       // no GRAPH clause
             "ASK { GRAPH ?g { ?s ?p ?o } }",                      // not SELECT
             "SELECT ?s WHERE { GRAPH ?g { ?s ?p ?o . ?o ?q ?r } }",  // two patterns
             "SELECT (COUNT(*) AS ?n) WHERE { GRAPH ?g { ?s ?p ?o } }",  // no GROUP BY
         }) {
        CAPTURE(bad);
        CHECK_THROWS_AS(evaluate_sparql_subset(seeded.store, bad), Error);
    }
}

TEST_CASE("results JSON round-trips") {
    SparqlResults results;
    results.vars = {"x", "n"};
    SparqlRow row;
    row.emplace("x", Term::iri("http://e.org/a"));
    row.emplace("n", Term::literal("3", std::string(vocab::xsd_integer)));
    results.rows.push_back(row);
    SparqlRow row2;
    row2.emplace("x", Term::blank("b0"));
    row2.emplace("n", Term::lang_literal("三", "zh"));
    results.rows.push_back(row2);

    auto back = sparql_results_from_json(sparql_results_to_json(results));
    CHECK(back.vars == results.vars);
    CHECK(back.rows == results.rows);

    CHECK_THROWS_AS(sparql_results_from_json("not json"), Error);
    CHECK_THROWS_AS(sparql_results_from_json("{}"), Error);
}

TEST_CASE("mock endpoint speaks the SPARQL protocol over HTTP") {
    SeededStore seeded;
    MockSparqlEndpoint endpoint(seeded.store);
    endpoint.start();

    std::string query = "SELECT DISTINCT ?g WHERE { GRAPH ?g { ?s ?p ?o } } ORDER BY ?g";

    SUBCASE("through the client (form-encoded POST)") {
        HttpSparqlClient client(endpoint.url(), std::chrono::milliseconds(5000));
        auto results = client.select(query);
        CHECK(results.rows.size() == 5);  // target + 4 fillers
    }

    SUBCASE("plain GET with a query parameter") {
        auto colon = endpoint.url().rfind(':');
        auto slash = endpoint.url().find('/', colon);
        httplib::Client raw(endpoint.url().substr(0, slash));
        auto res = raw.Get("/sparql?query=" + httplib::detail::encode_url(query));
        REQUIRE(res);
        CHECK(res->status == 200);
        CHECK(res->get_header_value("Content-Type") == "application/sparql-results+json");
        auto parsed = nlohmann::json::parse(res->body);
        CHECK(parsed["results"]["bindings"].size() == 5);
    }

    SUBCASE("bad query yields a 400 with an error body") {
        auto colon = endpoint.url().rfind(':');
        auto slash = endpoint.url().find('/', colon);
        httplib::Client raw(endpoint.url().substr(0, slash));
        auto res = raw.Post("/sparql", "query=ASK%20%7B%7D", "application/x-www-form-urlencoded");
        REQUIRE(res);
        CHECK(res->status == 400);
        auto parsed = nlohmann::json::parse(res->body);
        CHECK(parsed.contains("error"));
    }

    endpoint.stop();
}

TEST_CASE("http client maps transport failures to typed errors") {
    SUBCASE("unreachable port is a network error") {
        HttpSparqlClient client("http://127.0.0.1:1/sparql", std::chrono::milliseconds(800));
        try {
            client.select("SELECT DISTINCT ?g WHERE { GRAPH ?g { ?s ?p ?o } } ORDER BY ?g");
            FAIL("expected network-error");
        } catch (const Error& e) {
            CHECK((e.code() == Errc::network_error || e.code() == Errc::timeout));
        }
    }
    SUBCASE("non-success status is an endpoint error") {
        SeededStore seeded;
        MockSparqlEndpoint endpoint(seeded.store);
        endpoint.start();
        // Wrong path: the server answers 404.
        auto colon = endpoint.url().rfind("/sparql");
        std::string wrong = endpoint.url().substr(0, colon) + "/nope";
        HttpSparqlClient client(wrong, std::chrono::milliseconds(5000));
        try {
            client.select("SELECT DISTINCT ?g WHERE { GRAPH ?g { ?s ?p ?o } } ORDER BY ?g");
            FAIL("expected endpoint-error");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::endpoint_error);
        }
        endpoint.stop();
    }
}
