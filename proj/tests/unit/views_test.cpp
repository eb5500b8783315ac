#include <doctest.h>

#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "onto/syntax.hpp"
#include "onto/views.hpp"
#include "oracles.hpp"
#include "random_graph.hpp"

using namespace onto;

namespace {

const std::string kShl = "http://ont.library.sh.cn/ns/shl#";

Graph figure5() {
    return parse(test_support::read_fixture("shlnames.ttl"), SyntaxFormat::turtle);
}

}  // namespace

TEST_CASE("empty graph produces empty indices and arrays") {
    auto doc = list_view(Graph{});
    CHECK(doc.classes.empty());
    CHECK(doc.properties.empty());
    CHECK(doc.no_domain_properties.empty());

    auto vowl = vowl_export(Graph{});
    CHECK(vowl.classes.empty());
    CHECK(vowl.datatypes.empty());
    CHECK(vowl.properties.empty());
    auto j = nlohmann::json::parse(vowl_json(vowl));
    CHECK(j["class"].empty());
    CHECK(j["property"].empty());
}

TEST_CASE("figure-5 list view: shl:Person panel lists its two superclasses") {
    auto doc = list_view(figure5());
    const ListViewClass* person = nullptr;
    for (const auto& c : doc.classes) {
        if (c.iri == kShl + "Person") person = &c;
    }
    REQUIRE(person != nullptr);
    CHECK(person->super_classes ==
          std::vector<std::string>{kShl + "Agent", "http://xmlns.com/foaf/0.1/Person"});
    CHECK(person->property_iris.size() == 3);
    CHECK(person->label == "人物");

    // Indices are sorted.
    for (std::size_t i = 1; i < doc.classes.size(); ++i)
        CHECK(doc.classes[i - 1].iri < doc.classes[i].iri);
    for (std::size_t i = 1; i < doc.properties.size(); ++i)
        CHECK(doc.properties[i - 1].iri < doc.properties[i].iri);
}

TEST_CASE("every extracted term lands in exactly one index") {
    for (unsigned seed = 100; seed < 140; ++seed) {
        test_support::SubclassGen gen(seed);
        Graph g = gen.random_subclass_graph(16);
        std::set<std::string> classes, properties;
        test_support::schema_terms_oracle(g, classes, properties);

        auto doc = list_view(g);
        std::set<std::string> in_class_index, in_property_index;
        for (const auto& c : doc.classes) in_class_index.insert(c.iri);
        for (const auto& p : doc.properties) in_property_index.insert(p.iri);

        for (const auto& term : classes) {
            CHECK(in_class_index.count(term) == 1);
            CHECK(in_property_index.count(term) == 0);
        }
        for (const auto& term : properties) {
            int appearances = static_cast<int>(in_class_index.count(term)) +
                              static_cast<int>(in_property_index.count(term));
            CHECK(appearances == 1);
        }
    }
}

TEST_CASE("domain-less properties go to the synthetic bucket and no class panel") {
    Graph g = parse("@prefix ex: <http://e.org/> .\n"
                    "@prefix owl: <http://www.w3.org/2002/07/owl#> .\n"
                    "ex:C a owl:Class .\n"
                    "ex:floating a owl:DatatypeProperty .",
                    SyntaxFormat::turtle);
    auto doc = list_view(g);
    CHECK(doc.no_domain_properties == std::vector<std::string>{"http://e.org/floating"});
    for (const auto& c : doc.classes) CHECK(c.property_iris.empty());
}

TEST_CASE("vowl: rel:childOf becomes a self-loop on the shl:Person node") {
    auto doc = vowl_export(figure5());
    int person_index = -1;
    for (std::size_t i = 0; i < doc.classes.size(); ++i) {
        if (doc.classes[i].iri == kShl + "Person") person_index = static_cast<int>(i);
    }
    REQUIRE(person_index >= 0);
    bool found = false;
    for (const auto& e : doc.properties) {
        if (e.iri == "http://purl.org/vocab/relationship/childOf") {
            CHECK(e.domain == person_index);
            CHECK(e.range == person_index);
            CHECK(e.kind == PropertyKind::object_property);
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("vowl node count equals the class extraction") {
    for (unsigned seed = 7; seed < 27; ++seed) {
        test_support::SubclassGen gen(seed);
        Graph g = gen.random_subclass_graph(14);
        std::set<std::string> classes, properties;
        test_support::schema_terms_oracle(g, classes, properties);
        auto doc = vowl_export(g);
        CHECK(doc.classes.size() == classes.size());
        for (const auto& e : doc.properties) {
            CHECK(e.domain >= 0);
            CHECK(e.domain < static_cast<int>(doc.classes.size()));
            if (e.kind == PropertyKind::object_property)
                CHECK(e.range < static_cast<int>(doc.classes.size()));
            else
                CHECK(e.range < static_cast<int>(doc.datatypes.size()));
        }
    }
}

TEST_CASE("datatype properties attach as leaf nodes") {
    Graph g = parse("@prefix ex: <http://e.org/> .\n"
                    "@prefix owl: <http://www.w3.org/2002/07/owl#> .\n"
                    "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n"
                    "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n"
                    "ex:C a owl:Class .\n"
                    "ex:name a owl:DatatypeProperty ; rdfs:domain ex:C ; rdfs:range xsd:string .\n"
                    "ex:note a owl:DatatypeProperty ; rdfs:domain ex:C .",
                    SyntaxFormat::turtle);
    auto doc = vowl_export(g);
    REQUIRE(doc.classes.size() == 1);
    REQUIRE(doc.properties.size() == 2);
    REQUIRE(doc.datatypes.size() == 2);  // xsd:string and the rdfs:Literal default
    std::set<std::string> leaves;
    for (const auto& d : doc.datatypes) leaves.insert(d.iri);
    CHECK(leaves == std::set<std::string>{"http://www.w3.org/2001/XMLSchema#string",
                                          "http://www.w3.org/2000/01/rdf-schema#Literal"});
}

TEST_CASE("view exports are deterministic and well-formed") {
    Graph g = figure5();
    CHECK(list_view_json(list_view(g)) == list_view_json(list_view(g)));
    CHECK(vowl_json(vowl_export(g)) == vowl_json(vowl_export(g)));
    CHECK(list_view_html(list_view(g)) == list_view_html(list_view(g)));

    auto j = nlohmann::json::parse(list_view_json(list_view(g)));
    CHECK(j.contains("classes"));
    CHECK(j.contains("properties"));
    CHECK(j.contains("noDomainProperties"));

    std::string html = list_view_html(list_view(g));
    CHECK(html.rfind("<!DOCTYPE html>", 0) == 0);
    CHECK(html.find(kShl + "Person") != std::string::npos);
    CHECK(html.find("</html>") != std::string::npos);
}

TEST_CASE("html escapes markup-significant text") {
    Graph g = parse("@prefix ex: <http://e.org/> .\n"
                    "@prefix owl: <http://www.w3.org/2002/07/owl#> .\n"
                    "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n"
                    "ex:C a owl:Class ; rdfs:label \"<script>alert(1)</script>\" .",
                    SyntaxFormat::turtle);
    std::string html = list_view_html(list_view(g));
    CHECK(html.find("<script>") == std::string::npos);
    CHECK(html.find("&lt;script&gt;") != std::string::npos);
}
