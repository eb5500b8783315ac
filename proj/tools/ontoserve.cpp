// The ontoserve command line: ontology registration, dumps, views, search,
// version management, validation jobs, and the HTTP service.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "onto/error.hpp"
#include "onto/hierarchy.hpp"
#include "onto/registry.hpp"
#include "onto/service.hpp"
#include "onto/validator.hpp"
#include "onto/views.hpp"

namespace {

struct GlobalOptions {
    std::string store_root = "ontoserve-data/store";
    std::string archive_root = "ontoserve-data/archive";
    std::string base_iri = "http://example.org";
};

onto::Registry open_registry(const GlobalOptions& opts) {
    return onto::Registry(onto::Registry::Config{opts.store_root, opts.archive_root,
                                                 opts.base_iri});
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw onto::Error(onto::Errc::io_error, "cannot read file " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

onto::SyntaxFormat parse_format(const std::string& name) {
    auto f = onto::format_from_name(name);
    if (!f)
        throw onto::Error(onto::Errc::unsupported_format, "unknown format '" + name + "'");
    return *f;
}

nlohmann::json record_json(const onto::OntologyVersionRecord& r) {
    nlohmann::json j;
    j["prefix"] = r.prefix;
    j["recordIri"] = r.record_iri;
    j["title"] = r.title;
    j["versionInfo"] = r.version_info;
    j["issued"] = r.issued;
    j["rights"] = r.rights;
    j["license"] = r.license;
    j["sourceGraph"] = r.source_graph ? nlohmann::json(*r.source_graph) : nlohmann::json(nullptr);
    j["latest"] = r.source_graph.has_value();
    return j;
}

onto::EndpointSession make_session(const std::string& endpoint,
                                   const std::vector<std::string>& graphs, long timeout_ms,
                                   int page_size) {
    onto::EndpointSession session;
    session.endpoint_url = endpoint;
    session.target_graphs = graphs;
    session.timeout = std::chrono::milliseconds(timeout_ms);
    session.page_size = page_size;
    return session;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ontoserve - a self-hosted ontology datahub"};
    app.require_subcommand(1);

    GlobalOptions global;
    app.add_option("--store-root", global.store_root, "Quad store directory")
        ->envname("ONTOSERVE_STORE_ROOT");
    app.add_option("--archive-root", global.archive_root, "Archive directory")
        ->envname("ONTOSERVE_ARCHIVE_ROOT");
    app.add_option("--base-iri", global.base_iri, "Base IRI for minted record/graph IRIs")
        ->envname("ONTOSERVE_BASE_IRI");

    // register
    auto* reg = app.add_subcommand("register", "Register an ontology document");
    std::string reg_file, reg_format = "ttl";
    onto::RegistrationRequest request;
    std::vector<std::string> reg_catalogues;
    std::string reg_contributor, reg_source;
    reg->add_option("file", reg_file, "Ontology document")->required();
    reg->add_option("--prefix", request.prefix, "Short ontology prefix")->required();
    reg->add_option("--version", request.version_info, "Version label")->required();
    reg->add_option("--issued", request.issued, "Issue timestamp, e.g. 2021-03-08 00:00:00")
        ->required();
    reg->add_option("--format", reg_format, "Input format: ttl or nt");
    reg->add_option("--title", request.title, "Ontology title");
    reg->add_option("--description", request.description, "Ontology description");
    reg->add_option("--rights", request.rights, "Rights statement");
    reg->add_option("--license", request.license, "License IRI");
    reg->add_option("--contributor", reg_contributor, "Contributor name");
    reg->add_option("--catalogue", reg_catalogues, "Catalogue/category label (repeatable)");
    reg->add_option("--source-graph", reg_source, "Named graph IRI (default: minted)");

    // list
    auto* list_cmd = app.add_subcommand("list", "List registered ontologies");
    bool list_json = false;
    list_cmd->add_flag("--json", list_json, "JSON output");

    // versions
    auto* versions_cmd = app.add_subcommand("versions", "List versions of one ontology");
    std::string versions_prefix;
    bool versions_json = false;
    versions_cmd->add_option("prefix", versions_prefix)->required();
    versions_cmd->add_flag("--json", versions_json, "JSON output");

    // dump
    auto* dump_cmd = app.add_subcommand("dump", "Write one version as RDF to stdout");
    std::string dump_prefix, dump_version, dump_format = "ttl";
    dump_cmd->add_option("prefix", dump_prefix)->required();
    dump_cmd->add_option("--version", dump_version, "Version (default: latest)");
    dump_cmd->add_option("--format", dump_format, "ttl, nt, rdfxml or rdfjson");

    // tree / listview / vowl
    auto* tree_cmd = app.add_subcommand("tree", "Class hierarchy of the latest version");
    std::string tree_prefix;
    bool tree_json = false;
    tree_cmd->add_option("prefix", tree_prefix)->required();
    tree_cmd->add_flag("--json", tree_json, "JSON output");

    auto* listview_cmd = app.add_subcommand("listview", "Whole-vocabulary list view");
    std::string listview_prefix;
    bool listview_html = false;
    listview_cmd->add_option("prefix", listview_prefix)->required();
    listview_cmd->add_flag("--html", listview_html, "HTML output");

    auto* vowl_cmd = app.add_subcommand("vowl", "Graph-view JSON export");
    std::string vowl_prefix;
    vowl_cmd->add_option("prefix", vowl_prefix)->required();

    // search
    auto* search_cmd = app.add_subcommand("search", "Search the registry");
    std::string search_query;
    std::vector<std::string> search_facets;
    bool search_json = false;
    search_cmd->add_option("query", search_query)->required();
    search_cmd->add_option("--facet", search_facets,
                           "local-name, label, comment, catalogue, prefix or contributor");
    search_cmd->add_flag("--json", search_json, "JSON output");

    // diff
    auto* diff_cmd = app.add_subcommand("diff", "Compare two versions");
    std::string diff_prefix, diff_a, diff_b;
    bool diff_json = false;
    diff_cmd->add_option("prefix", diff_prefix)->required();
    diff_cmd->add_option("version-a", diff_a)->required();
    diff_cmd->add_option("version-b", diff_b)->required();
    diff_cmd->add_flag("--json", diff_json, "JSON output");

    // rollback
    auto* rollback_cmd = app.add_subcommand("rollback", "Restore an archived version");
    std::string rollback_prefix, rollback_version;
    rollback_cmd->add_option("prefix", rollback_prefix)->required();
    rollback_cmd->add_option("version", rollback_version)->required();

    // stats / validate
    auto* stats_cmd = app.add_subcommand("stats", "Usage statistics over a SPARQL endpoint");
    std::string stats_endpoint;
    std::vector<std::string> stats_graphs;
    long stats_timeout = 30000;
    int stats_page = 1000;
    bool stats_json = false;
    stats_cmd->add_option("--endpoint", stats_endpoint, "Endpoint URL or 'local:'")->required();
    stats_cmd->add_option("--graph", stats_graphs, "Target graph IRI (repeatable)")->required();
    stats_cmd->add_option("--timeout", stats_timeout, "Timeout in milliseconds");
    stats_cmd->add_option("--page-size", stats_page, "Result page size");
    stats_cmd->add_flag("--json", stats_json, "JSON output");

    auto* validate_cmd =
        app.add_subcommand("validate", "Validate dataset term usage against an ontology");
    std::string validate_endpoint, validate_ontology;
    std::vector<std::string> validate_graphs;
    long validate_timeout = 30000;
    int validate_page = 1000;
    bool validate_json = false;
    validate_cmd->add_option("--endpoint", validate_endpoint, "Endpoint URL or 'local:'")
        ->required();
    validate_cmd->add_option("--graph", validate_graphs, "Target graph IRI (repeatable)")
        ->required();
    validate_cmd->add_option("--ontology", validate_ontology, "Registered prefix or IRI")
        ->required();
    validate_cmd->add_option("--timeout", validate_timeout, "Timeout in milliseconds");
    validate_cmd->add_option("--page-size", validate_page, "Result page size");
    validate_cmd->add_flag("--json", validate_json, "JSON output");

    // serve
    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
    std::string serve_config_file, serve_listen;
    serve_cmd->add_option("--config", serve_config_file, "key=value configuration file");
    serve_cmd->add_option("--listen", serve_listen, "host:port (overrides config)");

    // graphs (endpoint enumeration)
    auto* graphs_cmd = app.add_subcommand("endpoint-graphs", "List graphs at a SPARQL endpoint");
    std::string graphs_endpoint;
    long graphs_timeout = 30000;
    graphs_cmd->add_option("--endpoint", graphs_endpoint, "Endpoint URL or 'local:'")->required();
    graphs_cmd->add_option("--timeout", graphs_timeout, "Timeout in milliseconds");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage errors exit 2; --help exits 0
    }

    try {
        if (reg->parsed()) {
            if (!reg_contributor.empty()) request.contributor = reg_contributor;
            if (!reg_source.empty()) request.source_graph = reg_source;
            request.catalogues.insert(reg_catalogues.begin(), reg_catalogues.end());
            auto registry = open_registry(global);
            auto record =
                registry.register_ontology(read_file(reg_file), parse_format(reg_format), request);
            std::cout << record_json(record).dump(2) << "\n";
        } else if (list_cmd->parsed()) {
            auto registry = open_registry(global);
            if (list_json) {
                auto arr = nlohmann::json::array();
                for (const auto& prefix : registry.prefixes())
                    arr.push_back(record_json(registry.latest(prefix)));
                std::cout << arr.dump(2) << "\n";
            } else {
                for (const auto& prefix : registry.prefixes()) {
                    auto r = registry.latest(prefix);
                    std::cout << prefix << "  " << r.version_info << "  " << r.issued << "  "
                              << r.title << "\n";
                }
            }
        } else if (versions_cmd->parsed()) {
            auto registry = open_registry(global);
            auto records = registry.versions(versions_prefix);
            if (versions_json) {
                auto arr = nlohmann::json::array();
                for (const auto& r : records) arr.push_back(record_json(r));
                std::cout << arr.dump(2) << "\n";
            } else {
                for (const auto& r : records) {
                    std::cout << r.version_info << "  " << r.issued
                              << (r.source_graph ? "  [latest]" : "") << "\n";
                }
            }
        } else if (dump_cmd->parsed()) {
            auto registry = open_registry(global);
            std::optional<std::string> version;
            if (!dump_version.empty()) version = dump_version;
            std::cout << registry.dump(dump_prefix, version, parse_format(dump_format));
        } else if (tree_cmd->parsed()) {
            auto registry = open_registry(global);
            auto forest = onto::class_tree(registry.version_graph(tree_prefix, std::nullopt));
            std::cout << (tree_json ? onto::class_tree_json(forest)
                                    : onto::class_tree_text(forest));
        } else if (listview_cmd->parsed()) {
            auto registry = open_registry(global);
            auto doc = onto::list_view(registry.version_graph(listview_prefix, std::nullopt));
            std::cout << (listview_html ? onto::list_view_html(doc) : onto::list_view_json(doc));
        } else if (vowl_cmd->parsed()) {
            auto registry = open_registry(global);
            std::cout << onto::vowl_json(
                onto::vowl_export(registry.version_graph(vowl_prefix, std::nullopt)));
        } else if (search_cmd->parsed()) {
            auto registry = open_registry(global);
            std::set<onto::SearchField> facets;
            for (const auto& name : search_facets) {
                auto field = onto::search_field_from_name(name);
                if (!field)
                    throw onto::Error(onto::Errc::usage_error, "unknown facet '" + name + "'");
                facets.insert(*field);
            }
            auto hits = registry.search(search_query, facets);
            if (search_json) {
                auto arr = nlohmann::json::array();
                for (const auto& hit : hits) {
                    arr.push_back({{"prefix", hit.ontology_prefix},
                                   {"termIri", hit.term_iri},
                                   {"termKind", onto::term_hit_kind_name(hit.term_kind)},
                                   {"matchedField", onto::search_field_name(hit.matched_field)},
                                   {"snippet", hit.snippet}});
                }
                std::cout << arr.dump(2) << "\n";
            } else {
                for (const auto& hit : hits) {
                    std::cout << hit.ontology_prefix << "  "
                              << onto::term_hit_kind_name(hit.term_kind) << "  " << hit.term_iri
                              << "  (" << onto::search_field_name(hit.matched_field) << ": "
                              << hit.snippet << ")\n";
                }
            }
        } else if (diff_cmd->parsed()) {
            auto registry = open_registry(global);
            auto d = registry.diff(diff_prefix, diff_a, diff_b);
            if (diff_json) {
                nlohmann::json j;
                auto added = nlohmann::json::array();
                for (const auto& t : d.added) added.push_back(onto::to_ntriples(t));
                auto removed = nlohmann::json::array();
                for (const auto& t : d.removed) removed.push_back(onto::to_ntriples(t));
                j["added"] = std::move(added);
                j["removed"] = std::move(removed);
                std::cout << j.dump(2) << "\n";
            } else {
                for (const auto& t : d.removed) std::cout << "- " << onto::to_ntriples(t) << "\n";
                for (const auto& t : d.added) std::cout << "+ " << onto::to_ntriples(t) << "\n";
            }
        } else if (rollback_cmd->parsed()) {
            auto registry = open_registry(global);
            auto record = registry.rollback(rollback_prefix, rollback_version);
            std::cout << rollback_prefix << " is now at version " << record.version_info << "\n";
        } else if (stats_cmd->parsed()) {
            auto registry = open_registry(global);
            onto::Validator validator(registry);
            auto report = validator.stats(
                make_session(stats_endpoint, stats_graphs, stats_timeout, stats_page));
            std::cout << (stats_json ? onto::stats_report_json(report)
                                     : onto::stats_report_table(report));
        } else if (validate_cmd->parsed()) {
            auto registry = open_registry(global);
            onto::Validator validator(registry);
            auto report = validator.validate(
                make_session(validate_endpoint, validate_graphs, validate_timeout, validate_page),
                validate_ontology);
            std::cout << (validate_json ? onto::validation_report_json(report)
                                        : onto::validation_report_table(report));
        } else if (graphs_cmd->parsed()) {
            auto registry = open_registry(global);
            onto::Validator validator(registry);
            onto::EndpointSession session;
            session.endpoint_url = graphs_endpoint;
            session.timeout = std::chrono::milliseconds(graphs_timeout);
            for (const auto& g : validator.enumerate_graphs(session)) std::cout << g << "\n";
        } else if (serve_cmd->parsed()) {
            onto::ServiceConfig config;
            if (!serve_config_file.empty()) config = onto::load_service_config(serve_config_file);
            onto::apply_env_overrides(config);
            if (!serve_listen.empty()) config.listen_address = serve_listen;
            if (app.count("--store-root")) config.store_root = global.store_root;
            if (app.count("--archive-root")) config.archive_root = global.archive_root;
            if (app.count("--base-iri")) config.base_iri = global.base_iri;
            onto::Registry registry(onto::Registry::Config{config.store_root,
                                                           config.archive_root,
                                                           config.base_iri});
            onto::HttpService service(registry, config);
            std::cerr << "listening on " << config.listen_address << "\n";
            service.serve();
        }
    } catch (const onto::Error& e) {
        std::cerr << "error: " << e.code_name() << ": " << e.what();
        if (e.diagnostic())
            std::cerr << " (line " << e.diagnostic()->line << ", column "
                      << e.diagnostic()->column << ")";
        std::cerr << "\n";
        return onto::errc_exit_code(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
