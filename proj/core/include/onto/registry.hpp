#ifndef ONTO_REGISTRY_HPP
#define ONTO_REGISTRY_HPP

#include <filesystem>
#include <functional>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include "onto/quad_store.hpp"
#include "onto/syntax.hpp"

namespace onto {

// One ontology version's metadata record, as held in the datasets graph.
// Exactly one record per prefix carries source_graph: the named graph storing
// the current version. Archived versions keep their records but lose the
// source_graph marker; their full triples live in archive files.
struct OntologyVersionRecord {
    std::string record_iri;  // {base}/ontology/{prefix}_{version_info}
    std::string prefix;
    std::string title;
    std::string description;
    std::string version_info;
    std::string issued;  // "YYYY-MM-DD" or "YYYY-MM-DD HH:MM:SS"
    std::string rights;
    std::string license;  // IRI, may be empty
    std::optional<std::string> source_graph;
    std::optional<std::string> contributor;
    std::set<std::string> catalogues;
};

struct ArchiveEntry {
    std::string prefix;
    std::string version_info;
    std::filesystem::path file_path;  // file name contains version_info
    SyntaxFormat format = SyntaxFormat::turtle;
};

struct GraphDiff {
    std::set<Triple> added;    // in b, not in a
    std::set<Triple> removed;  // in a, not in b
};

enum class TermHitKind { klass, object_property, datatype_property, ontology };
enum class SearchField { local_name, label, comment, catalogue, prefix, contributor };

const char* term_hit_kind_name(TermHitKind kind);
const char* search_field_name(SearchField field);
std::optional<SearchField> search_field_from_name(std::string_view name);

struct SearchHit {
    std::string ontology_prefix;
    std::string term_iri;
    TermHitKind term_kind = TermHitKind::klass;
    SearchField matched_field = SearchField::local_name;
    std::string snippet;  // the text the query matched
};

struct RegistrationRequest {
    std::string prefix;
    std::string version_info;
    std::string title;
    std::string description;
    std::string issued;
    std::string rights;
    std::string license;
    std::optional<std::string> source_graph;  // default: {base}/graph/{prefix}
    std::optional<std::string> contributor;
    std::set<std::string> catalogues;
};

// The registry: registration with syntax gating, the datasets graph, version
// archival and rollback, dumps, diffs, and term search. Mutations are atomic:
// on any error the store, the datasets graph, and the archive directory are
// left as they were.
class Registry {
public:
    struct Config {
        std::filesystem::path store_root;
        std::filesystem::path archive_root;
        std::string base_iri;  // used to mint record and graph IRIs
    };

    explicit Registry(Config config);

    // Parses the document (rejecting it wholesale on a syntax error), archives
    // the prior latest version if any, installs the new graph, and writes the
    // metadata record into the datasets graph.
    OntologyVersionRecord register_ontology(std::string_view document, SyntaxFormat format,
                                            const RegistrationRequest& request);

    OntologyVersionRecord latest(const std::string& prefix) const;

    // All records of a prefix, newest first (issued descending, then
    // version_info descending).
    std::vector<OntologyVersionRecord> versions(const std::string& prefix) const;

    // Registered prefixes, ascending.
    std::vector<std::string> prefixes() const;

    // Serialization of one version's graph; the latest comes from the store,
    // archived versions from their archive files. Empty version = latest.
    std::string dump(const std::string& prefix, const std::optional<std::string>& version,
                     SyntaxFormat format) const;

    // The stored graph of one version (parsed back from the archive when not
    // latest).
    Graph version_graph(const std::string& prefix,
                        const std::optional<std::string>& version) const;

    // Re-installs an archived version as the latest; the current latest is
    // archived in its place.
    OntologyVersionRecord rollback(const std::string& prefix, const std::string& version);

    // Triple-level difference between two versions, computed on canonical
    // blank labels.
    GraphDiff diff(const std::string& prefix, const std::string& version_a,
                   const std::string& version_b) const;

    // Case-insensitive substring search over the latest versions. An empty
    // facet set searches every field.
    std::vector<SearchHit> search(const std::string& query,
                                  const std::set<SearchField>& facets = {}) const;

    std::vector<ArchiveEntry> archive_entries(const std::string& prefix) const;

    Graph datasets_graph() const;
    std::string datasets_graph_iri() const;
    std::string record_iri_for(const std::string& prefix, const std::string& version) const;
    std::string graph_iri_for(const std::string& prefix) const;

    QuadStore& store() noexcept { return store_; }
    const QuadStore& store() const noexcept { return store_; }
    const Config& config() const noexcept { return config_; }

    // Test hook: invoked with a stage label between the commit steps of
    // register/rollback; a throwing hook exercises the rollback paths.
    void set_fault_hook(std::function<void(std::string_view)> hook) {
        fault_hook_ = std::move(hook);
    }

private:
    std::vector<OntologyVersionRecord> records_of(const Graph& datasets,
                                                  const std::string& prefix) const;
    std::vector<OntologyVersionRecord> all_records(const Graph& datasets) const;
    Graph record_to_triples(const OntologyVersionRecord& record) const;
    std::filesystem::path archive_path(const std::string& prefix,
                                       const std::string& version) const;
    void write_archive_file(const std::filesystem::path& path, const Graph& g) const;
    Graph load_archive(const std::string& prefix, const std::string& version) const;
    void fault_stage(std::string_view stage) const {
        if (fault_hook_) fault_hook_(stage);
    }

    Config config_;
    QuadStore store_;
    mutable std::shared_mutex mu_;
    std::function<void(std::string_view)> fault_hook_;
};

}  // namespace onto

#endif
