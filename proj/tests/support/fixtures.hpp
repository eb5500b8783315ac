#ifndef ONTOSERVE_TESTS_FIXTURES_HPP
#define ONTOSERVE_TESTS_FIXTURES_HPP

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "onto/quad_store.hpp"
#include "onto/registry.hpp"
#include "onto/term.hpp"

namespace test_support {

inline std::string fixture_path(const std::string& name) {
    return std::string(ONTOSERVE_FIXTURE_DIR) + "/" + name;
}

inline std::string read_fixture(const std::string& name) {
    std::ifstream in(fixture_path(name), std::ios::binary);
    if (!in) throw std::runtime_error("missing fixture " + name);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// The two metadata records of the storage-mechanism example, as Turtle.
inline constexpr const char* kSchemaRecord12 = R"ttl(
@prefix owl: <http://www.w3.org/2002/07/owl#> .
@prefix dc:  <http://purl.org/dc/terms/> .
@prefix cc:  <http://creativecommons.org/ns#> .

<http://ont.library.sh.cn/ontology/schema_12.0> a owl:Ontology ;
  dc:title "Schema.org vocabulary (schema)" ;
  dc:description "Search engines including Bing, Google, Yahoo! and Yandex rely on schema.org markup to improve the display of search results, making it easier for people to find the right web pages." ;
  owl:versionInfo "12.0" ;
  dc:rights "© 2021 Schema" ;
  dc:issued "2021-03-08 00:00:00" ;
  cc:license <https://creativecommons.org/licenses/by/3.0/> ;
  dc:source <http://ont.library.sh.cn/graph/schema> .
)ttl";

inline constexpr const char* kSchemaRecord31 = R"ttl(
@prefix owl: <http://www.w3.org/2002/07/owl#> .
@prefix dc:  <http://purl.org/dc/terms/> .
@prefix cc:  <http://creativecommons.org/ns#> .

<http://ont.library.sh.cn/ontology/schema_3.1> a owl:Ontology ;
  dc:title "Schema.org vocabulary (schema)" ;
  dc:description "Search engines including Bing, Google, Yahoo! and Yandex rely on schema.org markup to improve the display of search results, making it easier for people to find the right web pages." ;
  owl:versionInfo "3.1" ;
  dc:rights "© 2016 Schema" ;
  dc:issued "2016-08-09 00:00:00" ;
  cc:license <https://creativecommons.org/licenses/by/3.0/> .
)ttl";

inline onto::RegistrationRequest schema_request_31() {
    onto::RegistrationRequest r;
    r.prefix = "schema";
    r.version_info = "3.1";
    r.title = "Schema.org vocabulary (schema)";
    r.description =
        "Search engines including Bing, Google, Yahoo! and Yandex rely on schema.org markup to "
        "improve the display of search results, making it easier for people to find the right "
        "web pages.";
    r.issued = "2016-08-09 00:00:00";
    r.rights = "© 2016 Schema";
    r.license = "https://creativecommons.org/licenses/by/3.0/";
    return r;
}

inline onto::RegistrationRequest schema_request_120() {
    onto::RegistrationRequest r = schema_request_31();
    r.version_info = "12.0";
    r.issued = "2021-03-08 00:00:00";
    r.rights = "© 2021 Schema";
    return r;
}

// Registers the Schema.org fixture versions in issue order (v3.1 then v12.0).
inline void register_schema_fixtures(onto::Registry& registry) {
    registry.register_ontology(read_fixture("schema_3.1.ttl"), onto::SyntaxFormat::turtle,
                               schema_request_31());
    registry.register_ontology(read_fixture("schema_12.0.ttl"), onto::SyntaxFormat::turtle,
                               schema_request_120());
}

// ---- CBDB-style dataset -----------------------------------------------------------

inline constexpr const char* kShlNs = "http://ont.library.sh.cn/ns/shl#";
inline constexpr const char* kCbdbTargetGraph = "http://lod.library.sh.cn/graph/cbdb";

// Property usage the seeded dataset produces, most-used first; rdf:type,
// rdfs:label and shl:temporal lead, shl:relationObject and shl:nameType are
// used without being declared in the cbdb fixture ontology.
struct CbdbSeedPlan {
    std::vector<std::pair<std::string, int>> class_instances = {
        {"Person", 20}, {"Temporal", 14}, {"Relationship", 10}, {"Name", 8}, {"Place", 6},
        {"Office", 5},  {"Kinship", 4},   {"Text", 3},          {"Event", 2},
    };
    std::vector<std::pair<std::string, int>> property_statements = {
        {"temporal", 30}, {"place", 18},    {"relationObject", 12},
        {"kinship", 9},   {"office", 7},    {"nameType", 5},
        {"writing", 3},
    };
    int labeled_subjects = 44;  // rdfs:label statements
};

// Seeds the endpoint store with `filler_graphs` + 1 named graphs; the target
// graph carries the instance data. Returns every quad written, for oracle
// counting.
inline std::vector<onto::Quad> seed_cbdb_endpoint(onto::QuadStore& store,
                                                  int filler_graphs = 16) {
    using onto::Term;
    std::vector<onto::Quad> all;
    CbdbSeedPlan plan;

    auto shl = [](const std::string& local) { return Term::iri(std::string(kShlNs) + local); };
    Term rdf_type = Term::iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type");
    Term rdfs_label = Term::iri("http://www.w3.org/2000/01/rdf-schema#label");
    Term target = Term::iri(kCbdbTargetGraph);

    onto::Graph data;
    std::vector<Term> subjects;
    for (const auto& [local, count] : plan.class_instances) {
        for (int i = 0; i < count; ++i) {
            Term s = Term::iri("http://lod.library.sh.cn/entity/" + local + std::to_string(i));
            data.insert({s, rdf_type, shl(local)});
            subjects.push_back(s);
        }
    }
    for (int i = 0; i < plan.labeled_subjects; ++i) {
        data.insert({subjects[static_cast<std::size_t>(i) % subjects.size()], rdfs_label,
                     Term::literal("entity " + std::to_string(i))});
    }
    for (const auto& [local, count] : plan.property_statements) {
        for (int i = 0; i < count; ++i) {
            data.insert({subjects[static_cast<std::size_t>(i) % subjects.size()], shl(local),
                         Term::iri("http://lod.library.sh.cn/value/" + local +
                                   std::to_string(i))});
        }
    }
    store.put_graph(target, data);
    for (const auto& t : data) all.push_back({t, target});

    for (int i = 0; i < filler_graphs; ++i) {
        Term name = Term::iri("http://lod.library.sh.cn/graph/other" + std::to_string(i));
        onto::Graph filler;
        filler.insert({Term::iri("http://lod.library.sh.cn/entity/f" + std::to_string(i)),
                       rdfs_label, Term::literal("filler " + std::to_string(i))});
        store.put_graph(name, filler);
        for (const auto& t : filler) all.push_back({t, name});
    }
    return all;
}

}  // namespace test_support

#endif
