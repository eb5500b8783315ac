#include <benchmark/benchmark.h>

#include <filesystem>
#include <string>

#include "onto/hierarchy.hpp"
#include "onto/isomorphism.hpp"
#include "onto/quad_store.hpp"
#include "onto/syntax.hpp"
#include "onto/vocab.hpp"

namespace {

onto::Graph make_graph(int triples) {
    onto::Graph g;
    g.set_prefix("ex", "http://example.org/");
    for (int i = 0; i < triples; ++i) {
        g.insert({onto::Term::iri("http://example.org/s" + std::to_string(i % 64)),
                  onto::Term::iri("http://example.org/p" + std::to_string(i % 16)),
                  i % 3 == 0 ? onto::Term::literal("value " + std::to_string(i))
                             : onto::Term::iri("http://example.org/o" + std::to_string(i))});
    }
    return g;
}

onto::Graph make_blank_chain(int blanks) {
    onto::Graph g;
    onto::Term p = onto::Term::iri("http://example.org/next");
    g.insert({onto::Term::iri("http://example.org/root"), p, onto::Term::blank("b0")});
    for (int i = 0; i + 1 < blanks; ++i) {
        g.insert({onto::Term::blank("b" + std::to_string(i)), p,
                  onto::Term::blank("b" + std::to_string(i + 1))});
    }
    return g;
}

onto::Graph make_class_dag(int classes) {
    onto::Graph g;
    onto::Term type = onto::Term::iri(std::string(onto::vocab::rdf_type));
    onto::Term owl_class = onto::Term::iri(std::string(onto::vocab::owl_class));
    onto::Term sub = onto::Term::iri(std::string(onto::vocab::rdfs_sub_class_of));
    for (int i = 0; i < classes; ++i) {
        onto::Term c = onto::Term::iri("http://example.org/C" + std::to_string(i));
        g.insert({c, type, owl_class});
        if (i > 0)
            g.insert({c, sub, onto::Term::iri("http://example.org/C" + std::to_string(i / 2))});
    }
    return g;
}

void BM_TurtleParse(benchmark::State& state) {
    std::string doc = onto::serialize(make_graph(static_cast<int>(state.range(0))),
                                      onto::SyntaxFormat::turtle);
    for (auto _ : state) {
        benchmark::DoNotOptimize(onto::parse(doc, onto::SyntaxFormat::turtle));
    }
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(doc.size()));
}
BENCHMARK(BM_TurtleParse)->Arg(100)->Arg(1000)->Arg(5000);

void BM_NTriplesSerialize(benchmark::State& state) {
    onto::Graph g = make_graph(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(onto::serialize(g, onto::SyntaxFormat::ntriples));
    }
}
BENCHMARK(BM_NTriplesSerialize)->Arg(100)->Arg(1000)->Arg(5000);

void BM_StoreMatchByPredicate(benchmark::State& state) {
    auto root = std::filesystem::temp_directory_path() /
                ("ontoserve-bench-" + std::to_string(::getpid()));
    std::filesystem::remove_all(root);
    {
        onto::QuadStore store(root);
        store.put_graph(onto::Term::iri("http://example.org/graph"),
                        make_graph(static_cast<int>(state.range(0))));
        onto::QuadPattern pattern;
        pattern.graph = onto::Term::iri("http://example.org/graph");
        pattern.predicate = onto::Term::iri("http://example.org/p3");
        for (auto _ : state) {
            benchmark::DoNotOptimize(store.match(pattern));
        }
    }
    std::filesystem::remove_all(root);
}
BENCHMARK(BM_StoreMatchByPredicate)->Arg(1000)->Arg(10000);

void BM_CanonicalBlankLabels(benchmark::State& state) {
    onto::Graph g = make_blank_chain(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(onto::canonical_blank_labels(g));
    }
}
BENCHMARK(BM_CanonicalBlankLabels)->Arg(8)->Arg(32);

void BM_ClassTree(benchmark::State& state) {
    onto::Graph g = make_class_dag(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(onto::class_tree(g));
    }
}
BENCHMARK(BM_ClassTree)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
