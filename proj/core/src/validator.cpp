#include "onto/validator.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

#include "detail/text.hpp"
#include "onto/error.hpp"
#include "onto/vocab.hpp"

namespace onto {

bool core_vocabulary_term(std::string_view iri) {
    return iri.rfind(vocab::rdf_ns, 0) == 0 || iri.rfind(vocab::rdfs_ns, 0) == 0 ||
           iri.rfind(vocab::owl_ns, 0) == 0 || iri.rfind(vocab::xsd_ns, 0) == 0;
}

namespace {

std::string values_clause(const std::vector<std::string>& graphs) {
    std::string out = "VALUES ?g { ";
    for (const auto& g : graphs) {
        if (!is_valid_iri(g))
            throw Error(Errc::invalid_iri, "target graph must be an absolute IRI: '" + g + "'");
        out += "<" + g + "> ";
    }
    out += "} ";
    return out;
}

void require_targets(const EndpointSession& session) {
    if (session.target_graphs.empty())
        throw Error(Errc::malformed_request,
                    "target graphs must be selected before running validation or statistics");
    if (session.page_size < 1)
        throw Error(Errc::malformed_request, "page size must be positive");
}

// Runs the query page by page (LIMIT/OFFSET) until a short page arrives.
std::vector<SparqlRow> paged_select(SparqlClient& client, const std::string& base_query,
                                    int page_size) {
    std::vector<SparqlRow> rows;
    long offset = 0;
    while (true) {
        std::string query = base_query + " LIMIT " + std::to_string(page_size) + " OFFSET " +
                            std::to_string(offset);
        auto page = client.select(query);
        for (auto& row : page.rows) rows.push_back(std::move(row));
        if (static_cast<int>(page.rows.size()) < page_size) break;
        offset += page_size;
    }
    return rows;
}

long count_from(const SparqlRow& row, const std::string& var) {
    auto it = row.find(var);
    if (it == row.end() || !it->second.is_literal()) return 0;
    try {
        return std::stol(it->second.value());
    } catch (...) {
        throw Error(Errc::endpoint_error, "endpoint returned a non-numeric count");
    }
}

void sort_usage(std::vector<std::pair<std::string, long>>& usage) {
    std::sort(usage.begin(), usage.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
}

std::string rdf_type_iri() { return "<" + std::string(vocab::rdf_type) + ">"; }

}  // namespace

Validator::Validator(const Registry& registry) : registry_(&registry) {
    factory_ = [&registry](const EndpointSession& session) -> std::unique_ptr<SparqlClient> {
        if (session.endpoint_url == "local:" || session.endpoint_url == "local")
            return std::make_unique<LocalSparqlClient>(registry.store());
        if (session.endpoint_url.rfind("http://", 0) == 0 ||
            session.endpoint_url.rfind("https://", 0) == 0)
            return std::make_unique<HttpSparqlClient>(session.endpoint_url, session.timeout);
        throw Error(Errc::malformed_request,
                    "endpoint URL must be http(s) or 'local:': '" + session.endpoint_url + "'");
    };
}

Validator::Validator(const Registry& registry, ClientFactory factory)
    : registry_(&registry), factory_(std::move(factory)) {}

std::unique_ptr<SparqlClient> Validator::client_for(const EndpointSession& session) const {
    return factory_(session);
}

std::set<std::string> Validator::enumerate_graphs(const EndpointSession& session) const {
    if (session.page_size < 1)
        throw Error(Errc::malformed_request, "page size must be positive");
    auto client = client_for(session);
    auto rows = paged_select(*client,
                             "SELECT DISTINCT ?g WHERE { GRAPH ?g { ?s ?p ?o } } ORDER BY ?g",
                             session.page_size);
    std::set<std::string> out;
    for (const auto& row : rows) {
        auto it = row.find("g");
        if (it != row.end() && it->second.is_iri()) out.insert(it->second.value());
    }
    return out;
}

SchemaTerms Validator::used_terms(const EndpointSession& session) const {
    require_targets(session);
    auto client = client_for(session);
    std::string values = values_clause(session.target_graphs);

    SchemaTerms out;
    auto class_rows = paged_select(
        *client,
        "SELECT DISTINCT ?c WHERE { " + values + "GRAPH ?g { ?s " + rdf_type_iri() +
            " ?c } } ORDER BY ?c",
        session.page_size);
    for (const auto& row : class_rows) {
        auto it = row.find("c");
        if (it != row.end() && it->second.is_iri()) out.classes.insert(it->second.value());
    }
    auto property_rows = paged_select(
        *client,
        "SELECT DISTINCT ?p WHERE { " + values + "GRAPH ?g { ?s ?p ?o } } ORDER BY ?p",
        session.page_size);
    for (const auto& row : property_rows) {
        auto it = row.find("p");
        if (it != row.end() && it->second.is_iri()) out.properties.insert(it->second.value());
    }
    return out;
}

StatsReport Validator::stats(const EndpointSession& session) const {
    require_targets(session);
    auto client = client_for(session);
    std::string values = values_clause(session.target_graphs);

    StatsReport report;
    report.graphs_covered.insert(session.target_graphs.begin(), session.target_graphs.end());

    auto class_rows = paged_select(
        *client,
        "SELECT ?c (COUNT(DISTINCT ?s) AS ?n) WHERE { " + values + "GRAPH ?g { ?s " +
            rdf_type_iri() + " ?c } } GROUP BY ?c ORDER BY ?c",
        session.page_size);
    for (const auto& row : class_rows) {
        auto it = row.find("c");
        if (it == row.end() || !it->second.is_iri()) continue;
        long n = count_from(row, "n");
        if (n > 0) report.class_usage.emplace_back(it->second.value(), n);
    }

    auto property_rows = paged_select(
        *client,
        "SELECT ?p (COUNT(*) AS ?n) WHERE { " + values +
            "GRAPH ?g { ?s ?p ?o } } GROUP BY ?p ORDER BY ?p",
        session.page_size);
    for (const auto& row : property_rows) {
        auto it = row.find("p");
        if (it == row.end() || !it->second.is_iri()) continue;
        long n = count_from(row, "n");
        if (n > 0) report.property_usage.emplace_back(it->second.value(), n);
    }

    sort_usage(report.class_usage);
    sort_usage(report.property_usage);
    return report;
}

Graph Validator::resolve_ontology(const std::string& ontology, std::string& ontology_iri) const {
    // A registered prefix first, then a record IRI or source-graph IRI.
    try {
        auto record = registry_->latest(ontology);
        ontology_iri = *record.source_graph;
        return registry_->store().get_graph(Term::iri(ontology_iri));
    } catch (const Error& e) {
        if (e.code() != Errc::unknown_prefix && e.code() != Errc::malformed_request) throw;
    }
    for (const auto& prefix : registry_->prefixes()) {
        auto record = registry_->latest(prefix);
        if (record.record_iri == ontology ||
            (record.source_graph && *record.source_graph == ontology)) {
            ontology_iri = *record.source_graph;
            return registry_->store().get_graph(Term::iri(ontology_iri));
        }
    }
    throw Error(Errc::unknown_ontology,
                "'" + ontology + "' does not name a registered ontology");
}

ValidationReport Validator::validate(const EndpointSession& session,
                                     const std::string& ontology) const {
    require_targets(session);
    ValidationReport report;
    Graph ontology_graph = resolve_ontology(ontology, report.ontology_iri);
    SchemaTerms schema = extract_schema_terms(ontology_graph);

    StatsReport usage = stats(session);
    report.graphs_covered = usage.graphs_covered;

    for (const auto& [iri, count] : usage.class_usage) {
        TermVerdict v;
        v.iri = iri;
        v.usage = count;
        v.defined = schema.classes.count(iri) > 0 || core_vocabulary_term(iri);
        report.class_verdicts.push_back(std::move(v));
    }
    for (const auto& [iri, count] : usage.property_usage) {
        TermVerdict v;
        v.iri = iri;
        v.usage = count;
        v.defined = schema.properties.count(iri) > 0 || core_vocabulary_term(iri);
        report.property_verdicts.push_back(std::move(v));
    }
    return report;
}

// ---- report rendering -----------------------------------------------------------

namespace {

void append_usage_table(std::ostringstream& out, const char* heading,
                        const std::vector<std::pair<std::string, long>>& usage) {
    std::size_t width = std::string(heading).size();
    for (const auto& [iri, n] : usage) width = std::max(width, iri.size());
    out << heading << std::string(width - std::string(heading).size(), ' ') << "  count\n";
    for (const auto& [iri, n] : usage) {
        out << iri << std::string(width - iri.size(), ' ') << "  " << n << "\n";
    }
}

void append_verdict_table(std::ostringstream& out, const char* heading,
                          const std::vector<TermVerdict>& verdicts) {
    std::size_t width = std::string(heading).size();
    for (const auto& v : verdicts) width = std::max(width, v.iri.size());
    out << heading << std::string(width - std::string(heading).size(), ' ')
        << "  count  verdict\n";
    for (const auto& v : verdicts) {
        std::string count = std::to_string(v.usage);
        out << v.iri << std::string(width - v.iri.size(), ' ') << "  " << count
            << std::string(count.size() < 5 ? 5 - count.size() : 0, ' ') << "  "
            << (v.defined ? "ok" : "FAIL") << "\n";
    }
}

}  // namespace

std::string stats_report_json(const StatsReport& report) {
    nlohmann::json j;
    auto classes = nlohmann::json::array();
    for (const auto& [iri, n] : report.class_usage)
        classes.push_back({{"iri", iri}, {"count", n}});
    auto properties = nlohmann::json::array();
    for (const auto& [iri, n] : report.property_usage)
        properties.push_back({{"iri", iri}, {"count", n}});
    j["classUsage"] = std::move(classes);
    j["propertyUsage"] = std::move(properties);
    j["graphs"] = report.graphs_covered;
    return j.dump(2) + "\n";
}

std::string stats_report_table(const StatsReport& report) {
    std::ostringstream out;
    append_usage_table(out, "class", report.class_usage);
    out << "\n";
    append_usage_table(out, "property", report.property_usage);
    return out.str();
}

std::string validation_report_json(const ValidationReport& report) {
    nlohmann::json j;
    j["ontology"] = report.ontology_iri;
    j["graphs"] = report.graphs_covered;
    auto classes = nlohmann::json::array();
    for (const auto& v : report.class_verdicts)
        classes.push_back({{"iri", v.iri}, {"count", v.usage}, {"defined", v.defined}});
    auto properties = nlohmann::json::array();
    for (const auto& v : report.property_verdicts)
        properties.push_back({{"iri", v.iri}, {"count", v.usage}, {"defined", v.defined}});
    j["classes"] = std::move(classes);
    j["properties"] = std::move(properties);
    return j.dump(2) + "\n";
}

std::string validation_report_table(const ValidationReport& report) {
    std::ostringstream out;
    out << "ontology: " << report.ontology_iri << "\n\n";
    append_verdict_table(out, "class", report.class_verdicts);
    out << "\n";
    append_verdict_table(out, "property", report.property_verdicts);
    return out.str();
}

}  // namespace onto
