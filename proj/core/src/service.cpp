#include "onto/service.hpp"

#include <cstdlib>
#include <fstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "detail/text.hpp"
#include "onto/error.hpp"
#include "onto/hierarchy.hpp"
#include "onto/validator.hpp"
#include "onto/views.hpp"

namespace onto {

// ---- configuration ---------------------------------------------------------------

namespace {

void apply_config_entry(ServiceConfig& config, const std::string& key,
                        const std::string& value) {
    auto parse_int = [&](const char* what) {
        try {
            return std::stol(value);
        } catch (...) {
            throw Error(Errc::malformed_request,
                        std::string("config: ") + what + " must be an integer, got '" + value +
                            "'");
        }
    };
    if (key == "store-root") {
        config.store_root = value;
    } else if (key == "archive-root") {
        config.archive_root = value;
    } else if (key == "base-iri") {
        config.base_iri = value;
    } else if (key == "listen-address") {
        config.listen_address = value;
    } else if (key == "default-timeout") {
        config.default_timeout = std::chrono::milliseconds(parse_int("default-timeout"));
    } else if (key == "page-size") {
        config.page_size = static_cast<int>(parse_int("page-size"));
    } else {
        throw Error(Errc::malformed_request, "config: unknown key '" + key + "'");
    }
}

}  // namespace

ServiceConfig load_service_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw Error(Errc::io_error, "cannot read config file " + file.string());
    ServiceConfig config;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::string_view trimmed = detail::trim(line);
        if (trimmed.empty()) continue;
        auto eq = trimmed.find('=');
        if (eq == std::string_view::npos)
            throw Error(Errc::malformed_request, "config: line " + std::to_string(line_no) +
                                                     " is not key=value");
        std::string key(detail::trim(trimmed.substr(0, eq)));
        std::string value(detail::trim(trimmed.substr(eq + 1)));
        apply_config_entry(config, key, value);
    }
    return config;
}

void apply_env_overrides(ServiceConfig& config) {
    auto over = [&config](const char* env, const char* key) {
        if (const char* v = std::getenv(env)) apply_config_entry(config, key, v);
    };
    over("ONTOSERVE_STORE_ROOT", "store-root");
    over("ONTOSERVE_ARCHIVE_ROOT", "archive-root");
    over("ONTOSERVE_BASE_IRI", "base-iri");
    over("ONTOSERVE_LISTEN_ADDRESS", "listen-address");
    over("ONTOSERVE_DEFAULT_TIMEOUT", "default-timeout");
    over("ONTOSERVE_PAGE_SIZE", "page-size");
}

// ---- content negotiation ------------------------------------------------------------

std::optional<SyntaxFormat> negotiate_format(const std::string& accept_header) {
    std::string_view accept = detail::trim(accept_header);
    if (accept.empty()) return SyntaxFormat::turtle;

    // Our preference order breaks quality ties.
    const SyntaxFormat preference[] = {SyntaxFormat::turtle, SyntaxFormat::ntriples,
                                       SyntaxFormat::rdfxml, SyntaxFormat::rdfjson};
    double best_q = -1.0;
    std::optional<SyntaxFormat> best;

    std::size_t pos = 0;
    while (pos <= accept.size()) {
        auto comma = accept.find(',', pos);
        std::string_view item = accept.substr(
            pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        pos = comma == std::string_view::npos ? accept.size() + 1 : comma + 1;

        auto semi = item.find(';');
        std::string media(detail::trim(semi == std::string_view::npos ? item
                                                                      : item.substr(0, semi)));
        double q = 1.0;
        if (semi != std::string_view::npos) {
            std::string_view params = item.substr(semi + 1);
            auto qpos = params.find("q=");
            if (qpos != std::string_view::npos) {
                try {
                    q = std::stod(std::string(params.substr(qpos + 2)));
                } catch (...) {
                    q = 1.0;
                }
            }
        }
        if (q <= 0) continue;

        std::string lowered = detail::ascii_lower_copy(media);
        std::vector<SyntaxFormat> matched;
        if (lowered == "*/*") {
            matched.assign(std::begin(preference), std::end(preference));
        } else if (lowered == "text/*") {
            matched.push_back(SyntaxFormat::turtle);
        } else if (lowered == "application/*") {
            matched.assign({SyntaxFormat::ntriples, SyntaxFormat::rdfxml, SyntaxFormat::rdfjson});
        } else if (auto f = format_for_media_type(lowered)) {
            matched.push_back(*f);
        }
        for (auto f : matched) {
            if (q > best_q) {
                best_q = q;
                best = f;
            } else if (q == best_q && best) {
                for (auto pref : preference) {
                    if (pref == *best) break;
                    if (pref == f) {
                        best = f;
                        break;
                    }
                }
            }
        }
    }
    return best;
}

// ---- HTTP service --------------------------------------------------------------------

namespace {

int status_for(Errc code) {
    switch (code) {
        case Errc::invalid_iri:
        case Errc::unsupported_format:
        case Errc::unresolved_relative_iri:
        case Errc::empty_query:
        case Errc::malformed_request:
        case Errc::usage_error: return 400;
        case Errc::unknown_prefix:
        case Errc::unknown_version:
        case Errc::unknown_ontology: return 404;
        case Errc::unsupported_media_type:
        case Errc::rdfxml_unencodable: return 406;
        case Errc::duplicate_version:
        case Errc::version_already_latest: return 409;
        case Errc::syntax_error: return 422;
        case Errc::network_error:
        case Errc::endpoint_error:
        case Errc::timeout: return 502;
        case Errc::io_error:
        case Errc::lock_held: return 500;
    }
    return 500;
}

nlohmann::json error_body(const Error& e) {
    nlohmann::json j;
    j["error"] = e.code_name();
    j["message"] = e.what();
    if (e.diagnostic()) {
        j["line"] = e.diagnostic()->line;
        j["column"] = e.diagnostic()->column;
    }
    return j;
}

nlohmann::json record_json(const OntologyVersionRecord& r) {
    nlohmann::json j;
    j["prefix"] = r.prefix;
    j["recordIri"] = r.record_iri;
    j["title"] = r.title;
    j["description"] = r.description;
    j["versionInfo"] = r.version_info;
    j["issued"] = r.issued;
    j["rights"] = r.rights;
    j["license"] = r.license;
    j["sourceGraph"] = r.source_graph ? nlohmann::json(*r.source_graph) : nlohmann::json(nullptr);
    j["contributor"] =
        r.contributor ? nlohmann::json(*r.contributor) : nlohmann::json(nullptr);
    j["catalogues"] = r.catalogues;
    j["latest"] = r.source_graph.has_value();
    return j;
}

nlohmann::json hit_json(const SearchHit& hit) {
    nlohmann::json j;
    j["prefix"] = hit.ontology_prefix;
    j["termIri"] = hit.term_iri;
    j["termKind"] = term_hit_kind_name(hit.term_kind);
    j["matchedField"] = search_field_name(hit.matched_field);
    j["snippet"] = hit.snippet;
    return j;
}

}  // namespace

struct HttpService::Impl {
    Registry* registry;
    ServiceConfig config;
    Validator validator;
    httplib::Server server;
    std::thread thread;
    std::string host;
    int port = 0;

    Impl(Registry& reg, ServiceConfig cfg)
        : registry(&reg), config(std::move(cfg)), validator(reg) {}

    void route();
    void handle_register(const httplib::Request& req, httplib::Response& res);
    void handle_validate(const httplib::Request& req, httplib::Response& res);

    // Wraps a handler with the Error -> HTTP status/JSON mapping.
    httplib::Server::Handler guarded(
        std::function<void(const httplib::Request&, httplib::Response&)> fn) {
        return [fn = std::move(fn)](const httplib::Request& req, httplib::Response& res) {
            try {
                fn(req, res);
            } catch (const Error& e) {
                res.status = status_for(e.code());
                res.set_content(error_body(e).dump(), "application/json");
            } catch (const std::exception& e) {
                res.status = 500;
                nlohmann::json j;
                j["error"] = "io-error";
                j["message"] = e.what();
                res.set_content(j.dump(), "application/json");
            }
        };
    }
};

void HttpService::Impl::handle_register(const httplib::Request& req, httplib::Response& res) {
    RegistrationRequest request;
    std::string document;
    SyntaxFormat format = SyntaxFormat::turtle;

    auto fill = [&request](const std::string& key, const std::string& value) {
        if (key == "prefix")
            request.prefix = value;
        else if (key == "version")
            request.version_info = value;
        else if (key == "issued")
            request.issued = value;
        else if (key == "title")
            request.title = value;
        else if (key == "description")
            request.description = value;
        else if (key == "rights")
            request.rights = value;
        else if (key == "license")
            request.license = value;
        else if (key == "contributor")
            request.contributor = value;
        else if (key == "catalogue")
            request.catalogues.insert(value);
        else if (key == "source-graph")
            request.source_graph = value;
    };

    if (req.is_multipart_form_data()) {
        for (const auto& file : req.files) {
            if (file.first == "document" || file.first == "file") {
                document = file.second.content;
                if (auto f = format_for_media_type(file.second.content_type)) format = *f;
            } else {
                fill(file.first, file.second.content);
            }
        }
    } else {
        document = req.body;
        if (req.has_header("Content-Type")) {
            auto ct = req.get_header_value("Content-Type");
            if (auto f = format_for_media_type(ct)) {
                format = *f;
            } else if (!ct.empty() && ct.find("octet-stream") == std::string::npos) {
                throw Error(Errc::unsupported_media_type,
                            "cannot parse ontology documents of type '" + ct + "'");
            }
        }
    }
    for (const auto& [key, value] : req.params) fill(key, value);

    auto record = registry->register_ontology(document, format, request);
    res.status = 201;
    res.set_content(record_json(record).dump(2) + "\n", "application/json");
}

void HttpService::Impl::handle_validate(const httplib::Request& req, httplib::Response& res) {
    nlohmann::json body = nlohmann::json::parse(req.body, nullptr, /*allow_exceptions=*/false);
    if (body.is_discarded() || !body.is_object())
        throw Error(Errc::malformed_request, "request body must be a JSON object");
    if (!body.contains("endpoint") || !body["endpoint"].is_string())
        throw Error(Errc::malformed_request, "'endpoint' is required");
    if (!body.contains("graphs") || !body["graphs"].is_array())
        throw Error(Errc::malformed_request, "'graphs' must be an array of IRIs");

    EndpointSession session;
    session.endpoint_url = body["endpoint"].get<std::string>();
    for (const auto& g : body["graphs"]) {
        if (!g.is_string())
            throw Error(Errc::malformed_request, "'graphs' must be an array of IRIs");
        session.target_graphs.push_back(g.get<std::string>());
    }
    session.timeout = config.default_timeout;
    session.page_size = config.page_size;
    if (body.contains("timeout")) session.timeout =
        std::chrono::milliseconds(body["timeout"].get<long>());
    if (body.contains("pageSize")) session.page_size = body["pageSize"].get<int>();

    // Two-parameter rule: with an ontology the job validates, without it the
    // job computes statistics.
    if (body.contains("ontology") && !body["ontology"].is_null()) {
        auto report = validator.validate(session, body["ontology"].get<std::string>());
        res.set_content(validation_report_json(report), "application/json");
    } else {
        auto report = validator.stats(session);
        res.set_content(stats_report_json(report), "application/json");
    }
}

void HttpService::Impl::route() {
    auto& s = server;

    s.Post("/ontologies", guarded([this](const httplib::Request& req, httplib::Response& res) {
               handle_register(req, res);
           }));

    s.Get("/ontologies", guarded([this](const httplib::Request&, httplib::Response& res) {
              auto arr = nlohmann::json::array();
              for (const auto& prefix : registry->prefixes()) {
                  auto record = registry->latest(prefix);
                  auto j = record_json(record);
                  j["versionCount"] = registry->versions(prefix).size();
                  arr.push_back(std::move(j));
              }
              res.set_content(arr.dump(2) + "\n", "application/json");
          }));

    s.Get(R"(/ontology/([^/]+)/versions)",
          guarded([this](const httplib::Request& req, httplib::Response& res) {
              auto arr = nlohmann::json::array();
              for (const auto& record : registry->versions(req.matches[1]))
                  arr.push_back(record_json(record));
              res.set_content(arr.dump(2) + "\n", "application/json");
          }));

    s.Get(R"(/ontology/([^/]+)/view/(tree|list|vowl))",
          guarded([this](const httplib::Request& req, httplib::Response& res) {
              std::string prefix = req.matches[1];
              std::string which = req.matches[2];
              Graph g = registry->version_graph(prefix, std::nullopt);
              if (which == "tree") {
                  res.set_content(class_tree_json(class_tree(g)), "application/json");
              } else if (which == "vowl") {
                  res.set_content(vowl_json(vowl_export(g)), "application/json");
              } else {
                  auto doc = list_view(g);
                  auto accept = req.get_header_value("Accept");
                  if (accept.find("text/html") != std::string::npos)
                      res.set_content(list_view_html(doc), "text/html; charset=utf-8");
                  else
                      res.set_content(list_view_json(doc), "application/json");
              }
          }));

    s.Get(R"(/ontology/([^/]+))",
          guarded([this](const httplib::Request& req, httplib::Response& res) {
              auto format = negotiate_format(req.get_header_value("Accept"));
              if (!format)
                  throw Error(Errc::unsupported_media_type,
                              "no supported RDF media type in Accept header");
              std::string body = registry->dump(req.matches[1], std::nullopt, *format);
              res.set_content(body, std::string(media_type(*format)) + "; charset=utf-8");
          }));

    s.Get("/search", guarded([this](const httplib::Request& req, httplib::Response& res) {
              std::string q = req.get_param_value("q");
              std::set<SearchField> facets;
              for (std::size_t i = 0; i < req.get_param_value_count("facet"); ++i) {
                  auto name = req.get_param_value("facet", i);
                  auto field = search_field_from_name(name);
                  if (!field)
                      throw Error(Errc::malformed_request, "unknown facet '" + name + "'");
                  facets.insert(*field);
              }
              auto arr = nlohmann::json::array();
              for (const auto& hit : registry->search(q, facets)) arr.push_back(hit_json(hit));
              res.set_content(arr.dump(2) + "\n", "application/json");
          }));

    s.Post("/validate", guarded([this](const httplib::Request& req, httplib::Response& res) {
               handle_validate(req, res);
           }));

    s.Get("/endpoint-graphs",
          guarded([this](const httplib::Request& req, httplib::Response& res) {
              if (!req.has_param("endpoint"))
                  throw Error(Errc::malformed_request, "'endpoint' parameter is required");
              EndpointSession session;
              session.endpoint_url = req.get_param_value("endpoint");
              session.timeout = config.default_timeout;
              session.page_size = config.page_size;
              nlohmann::json j;
              j["graphs"] = validator.enumerate_graphs(session);
              res.set_content(j.dump(2) + "\n", "application/json");
          }));
}

namespace {

std::pair<std::string, int> split_listen_address(const std::string& address) {
    auto colon = address.rfind(':');
    if (colon == std::string::npos)
        throw Error(Errc::malformed_request,
                    "listen-address must be host:port, got '" + address + "'");
    std::string host = address.substr(0, colon);
    int port;
    try {
        port = std::stoi(address.substr(colon + 1));
    } catch (...) {
        throw Error(Errc::malformed_request,
                    "listen-address must be host:port, got '" + address + "'");
    }
    return {host, port};
}

}  // namespace

HttpService::HttpService(Registry& registry, ServiceConfig config)
    : impl_(std::make_unique<Impl>(registry, std::move(config))) {
    impl_->route();
}

HttpService::~HttpService() { stop(); }

int HttpService::start() {
    auto [host, port] = split_listen_address(impl_->config.listen_address);
    int bound = port;
    if (port == 0) {
        bound = impl_->server.bind_to_any_port(host);
        if (bound <= 0) throw Error(Errc::io_error, "cannot bind a port on " + host);
    } else {
        if (!impl_->server.bind_to_port(host, port))
            throw Error(Errc::io_error,
                        "cannot bind " + host + ":" + std::to_string(port));
    }
    impl_->host = host;
    impl_->port = bound;
    impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
    base_url_ = "http://" + host + ":" + std::to_string(bound);
    return bound;
}

void HttpService::serve() {
    auto [host, port] = split_listen_address(impl_->config.listen_address);
    if (!impl_->server.bind_to_port(host, port))
        throw Error(Errc::io_error, "cannot bind " + host + ":" + std::to_string(port));
    impl_->host = host;
    impl_->port = port;
    base_url_ = "http://" + host + ":" + std::to_string(port);
    impl_->server.listen_after_bind();
}

void HttpService::stop() {
    if (!impl_) return;
    impl_->server.stop();
    if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace onto
