#ifndef ONTOSERVE_TESTS_RANDOM_GRAPH_HPP
#define ONTOSERVE_TESTS_RANDOM_GRAPH_HPP

#include <random>
#include <string>
#include <vector>

#include "onto/graph.hpp"
#include "onto/term.hpp"
#include "onto/vocab.hpp"

namespace test_support {

// Seeded generator for graphs that exercise the parsers and serializers:
// unicode, awkward literals, language tags, datatypes, shared blank nodes.
class GraphGen {
public:
    explicit GraphGen(unsigned seed) : rng_(seed) {}

    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
    bool chance(double p) { return std::uniform_real_distribution<>(0.0, 1.0)(rng_) < p; }

    onto::Term random_iri() {
        switch (pick(4)) {
            case 0: return onto::Term::iri("http://example.org/t" + std::to_string(pick(24)));
            case 1: return onto::Term::iri("http://example.org/ns#x" + std::to_string(pick(16)));
            case 2: return onto::Term::iri("urn:test:n" + std::to_string(pick(12)));
            default:
                return onto::Term::iri("http://example.org/路径/" + std::to_string(pick(8)));
        }
    }

    onto::Term random_blank(int pool) { return onto::Term::blank("n" + std::to_string(pick(pool))); }

    onto::Term random_literal() {
        static const char* lexicals[] = {
            "plain",       "hello world", "line\nbreak", "tab\tseparated", "quote\"inside",
            "back\\slash", "中文文本",    "emoji ☃",     "",               "trailing space ",
        };
        std::string lexical = lexicals[pick(10)];
        switch (pick(4)) {
            case 0: return onto::Term::literal(lexical);
            case 1:
                return onto::Term::lang_literal(lexical, pick(2) == 0 ? "en" : "zh-CN");
            case 2:
                return onto::Term::literal(std::to_string(pick(1000)),
                                           std::string(onto::vocab::xsd_integer));
            default:
                return onto::Term::literal(lexical, "http://example.org/datatype#d" +
                                                        std::to_string(pick(4)));
        }
    }

    onto::Term random_object(bool with_blanks, int blank_pool) {
        int roll = pick(with_blanks ? 3 : 2);
        if (roll == 0) return random_iri();
        if (roll == 1) return random_literal();
        return random_blank(blank_pool);
    }

    onto::Graph random_graph(int max_triples, bool with_blanks = true,
                             bool with_prefixes = true) {
        onto::Graph g;
        int blank_pool = 2 + pick(5);
        int n = 1 + pick(max_triples);
        for (int i = 0; i < n; ++i) {
            onto::Term subject = (with_blanks && chance(0.25)) ? random_blank(blank_pool)
                                                               : random_iri();
            onto::Term predicate = random_iri();
            onto::Term object = random_object(with_blanks, blank_pool);
            g.insert({subject, predicate, object});
        }
        if (with_prefixes && chance(0.7)) {
            g.set_prefix("ex", "http://example.org/");
            g.set_prefix("ns", "http://example.org/ns#");
        }
        return g;
    }

    std::mt19937& rng() { return rng_; }

private:
    std::mt19937 rng_;
};

// Random RDFS class structures for the hierarchy oracles: up to `max_classes`
// classes, random declarations, random subclass edges (cycles permitted),
// occasional blank superclasses, and rdfs:domain-attached properties.
class SubclassGen {
public:
    explicit SubclassGen(unsigned seed) : rng_(seed) {}

    onto::Graph random_subclass_graph(int max_classes) {
        onto::Graph g;
        int n = 2 + pick(max_classes - 1);
        std::vector<onto::Term> classes;
        for (int i = 0; i < n; ++i)
            classes.push_back(onto::Term::iri("http://example.org/c" + std::to_string(i)));

        onto::Term type = onto::Term::iri(std::string(onto::vocab::rdf_type));
        onto::Term sub = onto::Term::iri(std::string(onto::vocab::rdfs_sub_class_of));
        onto::Term owl_class = onto::Term::iri(std::string(onto::vocab::owl_class));
        onto::Term rdfs_class = onto::Term::iri(std::string(onto::vocab::rdfs_class));

        for (const auto& c : classes) {
            if (chance(0.7)) g.insert({c, type, chance(0.5) ? owl_class : rdfs_class});
            if (chance(0.2))
                g.insert({c, onto::Term::iri(std::string(onto::vocab::rdfs_label)),
                          onto::Term::literal("label " + c.value())});
        }
        int edges = static_cast<int>(n * 1.2);
        for (int i = 0; i < edges; ++i) {
            onto::Term child = classes[pick(n)];
            onto::Term parent = chance(0.08) ? onto::Term::blank("anon" + std::to_string(pick(3)))
                                             : classes[pick(n)];
            if (child == parent && chance(0.7)) continue;  // keep some self loops
            g.insert({child, sub, parent});
        }
        // A few domain-attached properties with ranges.
        int props = pick(n);
        for (int i = 0; i < props; ++i) {
            onto::Term p = onto::Term::iri("http://example.org/p" + std::to_string(i));
            g.insert({p, type,
                      onto::Term::iri(std::string(chance(0.5)
                                                      ? onto::vocab::owl_object_property
                                                      : onto::vocab::owl_datatype_property))});
            g.insert({p, onto::Term::iri(std::string(onto::vocab::rdfs_domain)),
                      classes[pick(n)]});
            if (chance(0.6))
                g.insert({p, onto::Term::iri(std::string(onto::vocab::rdfs_range)),
                          classes[pick(n)]});
        }
        return g;
    }

    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
    bool chance(double p) { return std::uniform_real_distribution<>(0.0, 1.0)(rng_) < p; }

private:
    std::mt19937 rng_;
};

}  // namespace test_support

#endif
