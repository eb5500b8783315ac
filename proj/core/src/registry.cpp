#include "onto/registry.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <mutex>

#include "detail/text.hpp"
#include "onto/error.hpp"
#include "onto/isomorphism.hpp"
#include "onto/schema_terms.hpp"
#include "onto/vocab.hpp"

namespace onto {

namespace {

constexpr std::string_view kDatasetsGraphSegment = "/graph/__datasets__";

bool valid_name_segment(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!(detail::is_ascii_alnum(c) || c == '_' || c == '-' || c == '.')) return false;
    }
    return true;
}

// Comparable key for dc:issued values; unparseable strings sort first.
std::array<int, 6> issued_key(const std::string& issued) {
    std::array<int, 6> key{0, 0, 0, 0, 0, 0};
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
    int n = std::sscanf(issued.c_str(), "%d-%d-%d %d:%d:%d", &y, &mo, &d, &h, &mi, &s);
    if (n < 3) n = std::sscanf(issued.c_str(), "%d-%d-%dT%d:%d:%d", &y, &mo, &d, &h, &mi, &s);
    if (n >= 3) key = {y, mo, d, h, mi, s};
    return key;
}

Term iri(std::string_view s) { return Term::iri(std::string(s)); }

std::optional<std::string> single_object(const Graph& g, const Term& subject,
                                         std::string_view predicate, TermKind kind) {
    for (const auto& o : objects_of(g, subject, predicate)) {
        if (o.kind() == kind) return o.value();
    }
    return std::nullopt;
}

}  // namespace

const char* term_hit_kind_name(TermHitKind kind) {
    switch (kind) {
        case TermHitKind::klass: return "class";
        case TermHitKind::object_property: return "object-property";
        case TermHitKind::datatype_property: return "datatype-property";
        case TermHitKind::ontology: return "ontology";
    }
    return "unknown";
}

const char* search_field_name(SearchField field) {
    switch (field) {
        case SearchField::local_name: return "local-name";
        case SearchField::label: return "label";
        case SearchField::comment: return "comment";
        case SearchField::catalogue: return "catalogue";
        case SearchField::prefix: return "prefix";
        case SearchField::contributor: return "contributor";
    }
    return "unknown";
}

std::optional<SearchField> search_field_from_name(std::string_view name) {
    std::string n = detail::ascii_lower_copy(detail::trim(name));
    if (n == "local-name" || n == "localname") return SearchField::local_name;
    if (n == "label") return SearchField::label;
    if (n == "comment") return SearchField::comment;
    if (n == "catalogue" || n == "catalog") return SearchField::catalogue;
    if (n == "prefix") return SearchField::prefix;
    if (n == "contributor") return SearchField::contributor;
    return std::nullopt;
}

Registry::Registry(Config config) : config_(std::move(config)), store_(config_.store_root) {
    while (!config_.base_iri.empty() && config_.base_iri.back() == '/')
        config_.base_iri.pop_back();
    if (!is_valid_iri(config_.base_iri))
        throw Error(Errc::invalid_iri, "base IRI must be absolute: '" + config_.base_iri + "'");
}

std::string Registry::datasets_graph_iri() const {
    return config_.base_iri + std::string(kDatasetsGraphSegment);
}

std::string Registry::record_iri_for(const std::string& prefix,
                                     const std::string& version) const {
    return config_.base_iri + "/ontology/" + prefix + "_" + version;
}

std::string Registry::graph_iri_for(const std::string& prefix) const {
    return config_.base_iri + "/graph/" + prefix;
}

Graph Registry::datasets_graph() const { return store_.get_graph(iri(datasets_graph_iri())); }

std::filesystem::path Registry::archive_path(const std::string& prefix,
                                             const std::string& version) const {
    return config_.archive_root / (prefix + "_" + version + ".ttl");
}

std::vector<OntologyVersionRecord> Registry::all_records(const Graph& datasets) const {
    std::vector<OntologyVersionRecord> out;
    Term type = iri(vocab::rdf_type);
    Term ontology = iri(vocab::owl_ontology);
    std::string record_prefix = config_.base_iri + "/ontology/";
    for (const auto& t : datasets) {
        if (!(t.predicate == type && t.object == ontology && t.subject.is_iri())) continue;
        const std::string& record_iri = t.subject.value();
        if (record_iri.rfind(record_prefix, 0) != 0) continue;

        OntologyVersionRecord rec;
        rec.record_iri = record_iri;
        rec.version_info =
            single_object(datasets, t.subject, vocab::owl_version_info, TermKind::literal)
                .value_or("");
        // The record IRI ends with "_" + version_info; everything before is
        // the prefix.
        std::string local = record_iri.substr(record_prefix.size());
        std::string suffix = "_" + rec.version_info;
        if (rec.version_info.empty() || local.size() <= suffix.size() ||
            local.compare(local.size() - suffix.size(), suffix.size(), suffix) != 0)
            continue;
        rec.prefix = local.substr(0, local.size() - suffix.size());

        rec.title = single_object(datasets, t.subject, vocab::dc_title, TermKind::literal)
                        .value_or("");
        rec.description =
            single_object(datasets, t.subject, vocab::dc_description, TermKind::literal)
                .value_or("");
        rec.issued = single_object(datasets, t.subject, vocab::dc_issued, TermKind::literal)
                         .value_or("");
        rec.rights = single_object(datasets, t.subject, vocab::dc_rights, TermKind::literal)
                         .value_or("");
        rec.license = single_object(datasets, t.subject, vocab::cc_license, TermKind::iri)
                          .value_or("");
        rec.source_graph = single_object(datasets, t.subject, vocab::dc_source, TermKind::iri);
        rec.contributor =
            single_object(datasets, t.subject, vocab::dc_contributor, TermKind::literal);
        for (const auto& o : objects_of(datasets, t.subject, vocab::dc_subject)) {
            if (o.is_literal()) rec.catalogues.insert(o.value());
        }
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<OntologyVersionRecord> Registry::records_of(const Graph& datasets,
                                                        const std::string& prefix) const {
    auto all = all_records(datasets);
    std::vector<OntologyVersionRecord> out;
    for (auto& r : all) {
        if (r.prefix == prefix) out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end(),
              [](const OntologyVersionRecord& a, const OntologyVersionRecord& b) {
                  auto ka = issued_key(a.issued), kb = issued_key(b.issued);
                  if (ka != kb) return ka > kb;
                  return a.version_info > b.version_info;
              });
    return out;
}

Graph Registry::record_to_triples(const OntologyVersionRecord& record) const {
    Graph g;
    Term subject = iri(record.record_iri);
    g.insert({subject, iri(vocab::rdf_type), iri(vocab::owl_ontology)});
    g.insert({subject, iri(vocab::owl_version_info), Term::literal(record.version_info)});
    if (!record.title.empty())
        g.insert({subject, iri(vocab::dc_title), Term::literal(record.title)});
    if (!record.description.empty())
        g.insert({subject, iri(vocab::dc_description), Term::literal(record.description)});
    if (!record.issued.empty())
        g.insert({subject, iri(vocab::dc_issued), Term::literal(record.issued)});
    if (!record.rights.empty())
        g.insert({subject, iri(vocab::dc_rights), Term::literal(record.rights)});
    if (!record.license.empty())
        g.insert({subject, iri(vocab::cc_license), iri(record.license)});
    if (record.source_graph)
        g.insert({subject, iri(vocab::dc_source), iri(*record.source_graph)});
    if (record.contributor && !record.contributor->empty())
        g.insert({subject, iri(vocab::dc_contributor), Term::literal(*record.contributor)});
    for (const auto& cat : record.catalogues)
        g.insert({subject, iri(vocab::dc_subject), Term::literal(cat)});
    return g;
}

void Registry::write_archive_file(const std::filesystem::path& path, const Graph& g) const {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    std::string body = serialize(g, SyntaxFormat::turtle);
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(Errc::io_error, "cannot write archive file " + tmp.string());
        out.write(body.data(), static_cast<std::streamsize>(body.size()));
        if (!out.flush()) throw Error(Errc::io_error, "archive write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw Error(Errc::io_error, "cannot move archive file into place: " + path.string());
}

Graph Registry::load_archive(const std::string& prefix, const std::string& version) const {
    auto path = archive_path(prefix, version);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_error, "missing archive file " + path.string());
    std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse(body, SyntaxFormat::turtle);
}

OntologyVersionRecord Registry::register_ontology(std::string_view document, SyntaxFormat format,
                                                  const RegistrationRequest& request) {
    if (!valid_name_segment(request.prefix))
        throw Error(Errc::malformed_request,
                    "prefix must be a non-empty name of [A-Za-z0-9._-]: '" + request.prefix + "'");
    if (!valid_name_segment(request.version_info))
        throw Error(Errc::malformed_request,
                    "version must be a non-empty name of [A-Za-z0-9._-]: '" +
                        request.version_info + "'");
    if (!request.license.empty() && !is_valid_iri(request.license))
        throw Error(Errc::invalid_iri, "license must be an absolute IRI");

    // The syntax gate: a document that does not parse is never stored.
    Graph parsed = parse(document, format);

    std::unique_lock lock(mu_);
    Graph datasets = datasets_graph();
    auto existing = records_of(datasets, request.prefix);
    for (const auto& r : existing) {
        if (r.version_info == request.version_info)
            throw Error(Errc::duplicate_version, "version " + request.version_info +
                                                     " of '" + request.prefix +
                                                     "' is already registered");
    }

    std::string source_graph = request.source_graph.value_or(graph_iri_for(request.prefix));
    if (!is_valid_iri(source_graph))
        throw Error(Errc::invalid_iri, "source graph must be an absolute IRI");

    OntologyVersionRecord record;
    record.record_iri = record_iri_for(request.prefix, request.version_info);
    record.prefix = request.prefix;
    record.title = request.title;
    record.description = request.description;
    record.version_info = request.version_info;
    record.issued = request.issued;
    record.rights = request.rights;
    record.license = request.license;
    record.source_graph = source_graph;
    record.contributor = request.contributor;
    record.catalogues = request.catalogues;

    const OntologyVersionRecord* prior_latest = nullptr;
    for (const auto& r : existing) {
        if (r.source_graph) {
            prior_latest = &r;
            break;
        }
    }

    // Snapshots for the undo path.
    struct GraphSnapshot {
        Term name;
        bool existed;
        Graph content;
    };
    std::vector<GraphSnapshot> touched;
    auto snapshot = [&](const Term& name) {
        touched.push_back({name, store_.has_graph(name), store_.get_graph(name)});
    };
    std::filesystem::path archive_file;
    bool archive_written = false;
    std::optional<std::string> archive_prior_bytes;

    try {
        if (prior_latest) {
            Graph prior_graph = store_.get_graph(iri(*prior_latest->source_graph));
            archive_file = archive_path(request.prefix, prior_latest->version_info);
            if (std::filesystem::exists(archive_file)) {
                std::ifstream in(archive_file, std::ios::binary);
                archive_prior_bytes.emplace((std::istreambuf_iterator<char>(in)),
                                            std::istreambuf_iterator<char>());
            }
            write_archive_file(archive_file, prior_graph);
            archive_written = true;
            fault_stage("after-archive-write");
        }

        snapshot(iri(source_graph));
        if (prior_latest && *prior_latest->source_graph != source_graph)
            snapshot(iri(*prior_latest->source_graph));
        snapshot(iri(datasets_graph_iri()));

        store_.put_graph(iri(source_graph), parsed);
        fault_stage("after-graph-put");
        if (prior_latest && *prior_latest->source_graph != source_graph)
            store_.delete_graph(iri(*prior_latest->source_graph));

        Graph updated = datasets;
        if (prior_latest) {
            updated.erase({iri(prior_latest->record_iri), iri(vocab::dc_source),
                           iri(*prior_latest->source_graph)});
        }
        for (const auto& t : record_to_triples(record)) updated.insert(t);
        if (updated.prefixes().empty()) {
            updated.set_prefix("owl", std::string(vocab::owl_ns));
            updated.set_prefix("dc", std::string(vocab::dc_ns));
            updated.set_prefix("cc", std::string(vocab::cc_ns));
        }
        fault_stage("before-datasets-put");
        store_.put_graph(iri(datasets_graph_iri()), updated);
    } catch (...) {
        // Restore everything this registration touched, newest first.
        for (auto it = touched.rbegin(); it != touched.rend(); ++it) {
            try {
                if (it->existed)
                    store_.put_graph(it->name, it->content);
                else
                    store_.delete_graph(it->name);
            } catch (...) {
            }
        }
        if (archive_written) {
            std::error_code ec;
            if (archive_prior_bytes) {
                std::ofstream out(archive_file, std::ios::binary | std::ios::trunc);
                out.write(archive_prior_bytes->data(),
                          static_cast<std::streamsize>(archive_prior_bytes->size()));
            } else {
                std::filesystem::remove(archive_file, ec);
            }
        }
        throw;
    }
    return record;
}

OntologyVersionRecord Registry::latest(const std::string& prefix) const {
    std::shared_lock lock(mu_);
    auto records = records_of(datasets_graph(), prefix);
    if (records.empty())
        throw Error(Errc::unknown_prefix, "no ontology registered under prefix '" + prefix + "'");
    for (auto& r : records) {
        if (r.source_graph) return r;
    }
    throw Error(Errc::io_error, "registry invariant violated: no latest record for '" + prefix +
                                    "' carries a source graph");
}

std::vector<OntologyVersionRecord> Registry::versions(const std::string& prefix) const {
    std::shared_lock lock(mu_);
    auto records = records_of(datasets_graph(), prefix);
    if (records.empty())
        throw Error(Errc::unknown_prefix, "no ontology registered under prefix '" + prefix + "'");
    return records;
}

std::vector<std::string> Registry::prefixes() const {
    std::shared_lock lock(mu_);
    std::set<std::string> out;
    for (const auto& r : all_records(datasets_graph())) out.insert(r.prefix);
    return {out.begin(), out.end()};
}

Graph Registry::version_graph(const std::string& prefix,
                              const std::optional<std::string>& version) const {
    std::shared_lock lock(mu_);
    auto records = records_of(datasets_graph(), prefix);
    if (records.empty())
        throw Error(Errc::unknown_prefix, "no ontology registered under prefix '" + prefix + "'");
    const OntologyVersionRecord* target = nullptr;
    if (version) {
        for (const auto& r : records) {
            if (r.version_info == *version) {
                target = &r;
                break;
            }
        }
        if (!target)
            throw Error(Errc::unknown_version,
                        "no version '" + *version + "' of '" + prefix + "'");
    } else {
        for (const auto& r : records) {
            if (r.source_graph) {
                target = &r;
                break;
            }
        }
        if (!target) throw Error(Errc::io_error, "no latest record for '" + prefix + "'");
    }
    if (target->source_graph) return store_.get_graph(iri(*target->source_graph));
    return load_archive(prefix, target->version_info);
}

std::string Registry::dump(const std::string& prefix, const std::optional<std::string>& version,
                           SyntaxFormat format) const {
    return serialize(version_graph(prefix, version), format);
}

OntologyVersionRecord Registry::rollback(const std::string& prefix, const std::string& version) {
    std::unique_lock lock(mu_);
    Graph datasets = datasets_graph();
    auto records = records_of(datasets, prefix);
    if (records.empty())
        throw Error(Errc::unknown_version, "no ontology registered under prefix '" + prefix + "'");

    const OntologyVersionRecord* target = nullptr;
    const OntologyVersionRecord* current = nullptr;
    for (const auto& r : records) {
        if (r.version_info == version) target = &r;
        if (r.source_graph) current = &r;
    }
    if (!target)
        throw Error(Errc::unknown_version, "no version '" + version + "' of '" + prefix + "'");
    if (target->source_graph)
        throw Error(Errc::version_already_latest,
                    "version '" + version + "' of '" + prefix + "' is already the latest");
    if (!current)
        throw Error(Errc::io_error, "registry invariant violated: no latest record");

    Graph target_graph = load_archive(prefix, version);
    std::string graph_name = *current->source_graph;

    Graph current_graph = store_.get_graph(iri(graph_name));
    auto archive_file = archive_path(prefix, current->version_info);
    std::optional<std::string> archive_prior_bytes;
    if (std::filesystem::exists(archive_file)) {
        std::ifstream in(archive_file, std::ios::binary);
        archive_prior_bytes.emplace((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    }

    bool graph_put = false;
    write_archive_file(archive_file, current_graph);
    try {
        fault_stage("after-archive-write");

        store_.put_graph(iri(graph_name), target_graph);
        graph_put = true;
        fault_stage("after-graph-put");

        Graph updated = datasets;
        updated.erase({iri(current->record_iri), iri(vocab::dc_source), iri(graph_name)});
        updated.insert({iri(target->record_iri), iri(vocab::dc_source), iri(graph_name)});
        fault_stage("before-datasets-put");
        store_.put_graph(iri(datasets_graph_iri()), updated);
    } catch (...) {
        try {
            if (graph_put) store_.put_graph(iri(graph_name), current_graph);
        } catch (...) {
        }
        std::error_code ec;
        if (archive_prior_bytes) {
            std::ofstream out(archive_file, std::ios::binary | std::ios::trunc);
            out.write(archive_prior_bytes->data(),
                      static_cast<std::streamsize>(archive_prior_bytes->size()));
        } else {
            std::filesystem::remove(archive_file, ec);
        }
        throw;
    }

    OntologyVersionRecord result = *target;
    result.source_graph = graph_name;
    return result;
}

GraphDiff Registry::diff(const std::string& prefix, const std::string& version_a,
                         const std::string& version_b) const {
    Graph a = canonical_blank_labels(version_graph(prefix, version_a));
    Graph b = canonical_blank_labels(version_graph(prefix, version_b));
    GraphDiff out;
    for (const auto& t : b) {
        if (!a.contains(t)) out.added.insert(t);
    }
    for (const auto& t : a) {
        if (!b.contains(t)) out.removed.insert(t);
    }
    return out;
}

std::vector<ArchiveEntry> Registry::archive_entries(const std::string& prefix) const {
    std::vector<ArchiveEntry> out;
    std::error_code ec;
    if (!std::filesystem::is_directory(config_.archive_root, ec)) return out;
    std::string stem_prefix = prefix + "_";
    for (const auto& entry : std::filesystem::directory_iterator(config_.archive_root, ec)) {
        if (!entry.is_regular_file()) continue;
        auto name = entry.path().filename().string();
        if (name.rfind(stem_prefix, 0) != 0 || entry.path().extension() != ".ttl") continue;
        ArchiveEntry ae;
        ae.prefix = prefix;
        ae.version_info = entry.path().stem().string().substr(stem_prefix.size());
        ae.file_path = entry.path();
        out.push_back(std::move(ae));
    }
    std::sort(out.begin(), out.end(),
              [](const ArchiveEntry& a, const ArchiveEntry& b) {
                  return a.version_info < b.version_info;
              });
    return out;
}

std::vector<SearchHit> Registry::search(const std::string& query,
                                        const std::set<SearchField>& facets) const {
    std::string needle(detail::trim(query));
    if (needle.empty()) throw Error(Errc::empty_query, "search query is empty");

    auto wants = [&facets](SearchField f) { return facets.empty() || facets.count(f) > 0; };

    std::shared_lock lock(mu_);
    Graph datasets = datasets_graph();
    std::set<std::string> prefix_set;
    for (const auto& r : all_records(datasets)) prefix_set.insert(r.prefix);

    std::vector<SearchHit> hits;
    for (const auto& prefix : prefix_set) {
        auto records = records_of(datasets, prefix);
        const OntologyVersionRecord* latest_record = nullptr;
        for (const auto& r : records) {
            if (r.source_graph) {
                latest_record = &r;
                break;
            }
        }
        if (!latest_record) continue;

        // Ontology-level fields.
        if (wants(SearchField::prefix) && detail::contains_ci(prefix, needle)) {
            hits.push_back({prefix, latest_record->record_iri, TermHitKind::ontology,
                            SearchField::prefix, prefix});
        }
        if (wants(SearchField::contributor) && latest_record->contributor &&
            detail::contains_ci(*latest_record->contributor, needle)) {
            hits.push_back({prefix, latest_record->record_iri, TermHitKind::ontology,
                            SearchField::contributor, *latest_record->contributor});
        }
        if (wants(SearchField::catalogue)) {
            for (const auto& cat : latest_record->catalogues) {
                if (detail::contains_ci(cat, needle)) {
                    hits.push_back({prefix, latest_record->record_iri, TermHitKind::ontology,
                                    SearchField::catalogue, cat});
                    break;
                }
            }
        }

        // Vocabulary terms of the latest version.
        Graph g = store_.get_graph(iri(*latest_record->source_graph));
        SchemaTerms terms = extract_schema_terms(g);
        std::set<std::string> all_terms = terms.classes;
        for (const auto& p : terms.properties) all_terms.insert(p);
        for (const auto& term_iri : all_terms) {
            TermHitKind kind;
            if (terms.classes.count(term_iri)) {
                kind = TermHitKind::klass;
            } else {
                switch (property_kind(g, term_iri)) {
                    case PropertyKind::object_property: kind = TermHitKind::object_property; break;
                    case PropertyKind::datatype_property:
                        kind = TermHitKind::datatype_property;
                        break;
                    default: continue;  // annotation/plain properties are not searchable terms
                }
            }
            Term subject = iri(term_iri);
            if (wants(SearchField::local_name)) {
                auto local = detail::iri_local_name(term_iri);
                if (detail::contains_ci(local, needle)) {
                    hits.push_back(
                        {prefix, term_iri, kind, SearchField::local_name, std::string(local)});
                }
            }
            if (wants(SearchField::label)) {
                for (const auto& o : objects_of(g, subject, vocab::rdfs_label)) {
                    if (o.is_literal() && detail::contains_ci(o.value(), needle)) {
                        hits.push_back({prefix, term_iri, kind, SearchField::label, o.value()});
                        break;
                    }
                }
            }
            if (wants(SearchField::comment)) {
                for (const auto& o : objects_of(g, subject, vocab::rdfs_comment)) {
                    if (o.is_literal() && detail::contains_ci(o.value(), needle)) {
                        hits.push_back({prefix, term_iri, kind, SearchField::comment, o.value()});
                        break;
                    }
                }
            }
        }
    }

    std::sort(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b) {
        if (a.ontology_prefix != b.ontology_prefix) return a.ontology_prefix < b.ontology_prefix;
        if (a.term_iri != b.term_iri) return a.term_iri < b.term_iri;
        return static_cast<int>(a.matched_field) < static_cast<int>(b.matched_field);
    });
    return hits;
}

}  // namespace onto
