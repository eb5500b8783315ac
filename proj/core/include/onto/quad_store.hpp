#ifndef ONTO_QUAD_STORE_HPP
#define ONTO_QUAD_STORE_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "onto/graph.hpp"
#include "onto/term.hpp"

namespace onto {

// A quad pattern; an absent field is a wildcard. All-wildcard is a full scan.
struct QuadPattern {
    std::optional<Term> graph;
    std::optional<Term> subject;
    std::optional<Term> predicate;
    std::optional<Term> object;
};

// Durable named-graph quad store backed by a single append-only file with a
// term dictionary and periodic compaction. One writer per root path (advisory
// file lock); any number of in-process readers. A reader observes graph
// replacement atomically: either the whole old graph or the whole new one.
//
// Indexing uses three permutations (graph-subject-predicate-object,
// graph-predicate-object-subject, graph-object-subject-predicate) so patterns
// that bind the graph plus any one term position avoid full scans.
class QuadStore {
public:
    // Opens (or creates) the store under root. Throws Error(lock_held) when
    // another handle owns the store, Error(io_error) on an unreadable or
    // incompatible store file.
    explicit QuadStore(const std::filesystem::path& root);
    ~QuadStore();

    QuadStore(const QuadStore&) = delete;
    QuadStore& operator=(const QuadStore&) = delete;

    // Replaces graph `name` with exactly g's triples and records g's prefix
    // map. An empty g is retained (prefix map included) but is not listed.
    void put_graph(const Term& name, const Graph& g);

    // Removes the graph; deleting a missing graph is a no-op.
    void delete_graph(const Term& name);

    // All stored quads unifying with the pattern; no duplicates, order
    // unspecified.
    std::vector<Quad> match(const QuadPattern& pattern) const;

    // Names of all non-empty graphs, in term order.
    std::vector<Term> list_graphs() const;

    // Triples plus recorded prefix map of one graph; empty graph if absent.
    Graph get_graph(const Term& name) const;

    bool has_graph(const Term& name) const;

    const std::filesystem::path& root() const noexcept { return root_; }

    // Rewrites the store file from live state, dropping superseded records.
    void compact();

private:
    using TermId = std::uint32_t;
    using QuadIds = std::array<TermId, 4>;  // g, s, p, o

    struct TermHash {
        std::size_t operator()(const Term& t) const noexcept;
    };

    struct GraphInfo {
        Graph::PrefixMap prefixes;
        std::size_t triple_count = 0;
    };

    TermId intern(const Term& t, std::string& log);
    const Term& term(TermId id) const { return terms_[id]; }
    std::optional<TermId> find_term(const Term& t) const;

    void replay_file();
    void apply_put(TermId graph_id, GraphInfo info, const std::vector<QuadIds>& quads);
    void apply_delete(TermId graph_id);
    void append_and_sync(const std::string& record);
    void remove_graph_quads(TermId graph_id);
    void maybe_compact_locked();

    std::filesystem::path root_;
    int lock_fd_ = -1;
    int data_fd_ = -1;

    mutable std::shared_mutex mu_;
    std::vector<Term> terms_;
    std::unordered_map<Term, TermId, TermHash> term_ids_;
    std::map<TermId, GraphInfo> graphs_;
    std::set<QuadIds> gspo_;
    std::set<QuadIds> gpos_;
    std::set<QuadIds> gosp_;
    std::size_t dead_records_ = 0;
};

}  // namespace onto

#endif
