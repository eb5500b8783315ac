#include <doctest.h>

#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "onto/error.hpp"
#include "onto/isomorphism.hpp"
#include "onto/syntax.hpp"
#include "onto/vocab.hpp"
#include "random_graph.hpp"

using namespace onto;
using test_support::GraphGen;

TEST_CASE("empty graph serializes to an empty ntriples document") {
    CHECK(serialize(Graph{}, SyntaxFormat::ntriples).empty());
}

TEST_CASE("ntriples output is line-oriented and lexicographically sorted") {
    GraphGen gen(5);
    Graph g = gen.random_graph(15);
    std::string out = serialize(g, SyntaxFormat::ntriples);
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < out.size()) {
        auto nl = out.find('\n', start);
        REQUIRE(nl != std::string::npos);  // every statement ends with newline
        lines.push_back(out.substr(start, nl - start));
        start = nl + 1;
    }
    CHECK(lines.size() == g.size());
    for (const auto& line : lines) {
        CHECK(line.size() >= 2);
        CHECK(line.substr(line.size() - 2) == " .");
    }
    CHECK(std::is_sorted(lines.begin(), lines.end()));
}

TEST_CASE("the archived-record fixture yields 7 statement lines") {
    Graph g = parse(test_support::kSchemaRecord31, SyntaxFormat::turtle);
    std::string out = serialize(g, SyntaxFormat::ntriples);
    CHECK(std::count(out.begin(), out.end(), '\n') == 7);
}

TEST_CASE("round trip: parse(serialize(g)) is ground-equal, both formats") {
    GraphGen gen(42);
    for (int i = 0; i < 40; ++i) {
        Graph g = gen.random_graph(12);
        for (auto f : {SyntaxFormat::turtle, SyntaxFormat::ntriples}) {
            Graph back = parse(serialize(g, f), f);
            CHECK(graph_equal_ground(back, g));
        }
    }
}

TEST_CASE("round trip preserves the fixture ontologies") {
    for (const char* name : {"shlnames.ttl", "skos.ttl", "schema_12.0.ttl"}) {
        Graph g = parse(test_support::read_fixture(name), SyntaxFormat::turtle);
        for (auto f : {SyntaxFormat::turtle, SyntaxFormat::ntriples}) {
            CHECK(graph_equal_ground(parse(serialize(g, f), f), g));
        }
    }
}

TEST_CASE("serialization is deterministic byte for byte") {
    GraphGen gen(77);
    Graph g = gen.random_graph(14);
    for (auto f : {SyntaxFormat::turtle, SyntaxFormat::ntriples, SyntaxFormat::rdfxml,
                   SyntaxFormat::rdfjson}) {
        CHECK(serialize(g, f) == serialize(g, f));
    }
    // A copy built in a different insertion order serializes identically.
    Graph copy;
    copy.set_prefixes(g.prefixes());
    std::vector<Triple> triples(g.begin(), g.end());
    for (auto it = triples.rbegin(); it != triples.rend(); ++it) copy.insert(*it);
    CHECK(serialize(copy, SyntaxFormat::turtle) == serialize(g, SyntaxFormat::turtle));
}

TEST_CASE("turtle output uses the stored prefix map") {
    Graph g = parse("@prefix ex: <http://e.org/> .\nex:s ex:p ex:o .", SyntaxFormat::turtle);
    std::string out = serialize(g, SyntaxFormat::turtle);
    CHECK(out.find("@prefix ex: <http://e.org/> .") != std::string::npos);
    CHECK(out.find("ex:s ex:p ex:o .") != std::string::npos);
    CHECK(out.find("<http://e.org/s>") == std::string::npos);
}

TEST_CASE("turtle falls back to full IRIs for unprefixed terms") {
    Graph g;
    g.insert({Term::iri("http://other.org/s"), Term::iri("http://other.org/p"),
              Term::iri("http://other.org/o")});
    g.set_prefix("ex", "http://e.org/");
    std::string out = serialize(g, SyntaxFormat::turtle);
    CHECK(out.find("<http://other.org/s>") != std::string::npos);
}

TEST_CASE("rdfxml output is well-formed and carries the triples") {
    Graph g = parse(test_support::kSchemaRecord12, SyntaxFormat::turtle);
    std::string out = serialize(g, SyntaxFormat::rdfxml);
    CHECK(out.rfind("<?xml", 0) == 0);
    CHECK(out.find("<rdf:RDF") != std::string::npos);
    CHECK(out.find("</rdf:RDF>") != std::string::npos);
    CHECK(out.find("rdf:about=\"http://ont.library.sh.cn/ontology/schema_12.0\"") !=
          std::string::npos);
    CHECK(out.find("rdf:resource=\"http://ont.library.sh.cn/graph/schema\"") !=
          std::string::npos);
    // Escaping of markup-significant characters in literals.
    Graph esc;
    esc.insert({Term::iri("http://e.org/s"), Term::iri("http://e.org/p"),
                Term::literal("a<b>&\"c")});
    std::string body = serialize(esc, SyntaxFormat::rdfxml);
    CHECK(body.find("a&lt;b&gt;&amp;&quot;c") != std::string::npos);
}

TEST_CASE("rdfxml rejects predicates with no XML-name suffix") {
    Graph g;
    g.insert({Term::iri("http://e.org/s"), Term::iri("http://e.org/p/"),
              Term::literal("x")});
    try {
        serialize(g, SyntaxFormat::rdfxml);
        FAIL("expected rdfxml-unencodable");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::rdfxml_unencodable);
    }
    Graph digits;
    digits.insert({Term::iri("http://e.org/s"), Term::iri("http://e.org/123"),
                   Term::literal("x")});
    CHECK_THROWS_AS(serialize(digits, SyntaxFormat::rdfxml), Error);
}

TEST_CASE("rdfjson output follows subject/predicate/object-array structure") {
    Graph g = parse("@prefix ex: <http://e.org/> .\n"
                    "ex:s ex:p ex:o, \"lit\"@en, _:b .",
                    SyntaxFormat::turtle);
    auto j = nlohmann::json::parse(serialize(g, SyntaxFormat::rdfjson));
    REQUIRE(j.contains("http://e.org/s"));
    auto& values = j["http://e.org/s"]["http://e.org/p"];
    REQUIRE(values.is_array());
    CHECK(values.size() == 3);
    std::set<std::string> types;
    for (const auto& v : values) {
        REQUIRE(v.contains("type"));
        REQUIRE(v.contains("value"));
        types.insert(v["type"].get<std::string>());
        if (v["type"] == "literal") CHECK(v["lang"] == "en");
        if (v["type"] == "bnode") CHECK(v["value"].get<std::string>().rfind("_:", 0) == 0);
    }
    CHECK(types == std::set<std::string>{"uri", "literal", "bnode"});
}

TEST_CASE("numeric literal shorthand survives the round trip") {
    Graph g;
    Term s = Term::iri("http://e.org/s");
    g.insert({s, Term::iri("http://e.org/int"), Term::literal("42", std::string(vocab::xsd_integer))});
    g.insert({s, Term::iri("http://e.org/odd"),
              Term::literal("not-a-number", std::string(vocab::xsd_integer))});
    g.insert({s, Term::iri("http://e.org/bool"),
              Term::literal("true", std::string(vocab::xsd_boolean))});
    Graph back = parse(serialize(g, SyntaxFormat::turtle), SyntaxFormat::turtle);
    CHECK(back == g);
}

TEST_CASE("awkward blank labels are consistently renamed") {
    Graph g;
    Term weird = Term::blank("has spaces and ,commas");
    g.insert({weird, Term::iri("http://e.org/p"), Term::literal("x")});
    g.insert({weird, Term::iri("http://e.org/q"), weird});
    for (auto f : {SyntaxFormat::turtle, SyntaxFormat::ntriples, SyntaxFormat::rdfxml}) {
        CAPTURE(format_name(f));
        if (f == SyntaxFormat::rdfxml) {
            std::string out = serialize(g, f);
            CHECK(out.find("has spaces") == std::string::npos);
        } else {
            Graph back = parse(serialize(g, f), f);
            CHECK(graph_equal_ground(back, g));
        }
    }
}
