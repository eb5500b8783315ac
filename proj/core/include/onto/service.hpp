#ifndef ONTO_SERVICE_HPP
#define ONTO_SERVICE_HPP

#include <chrono>
#include <filesystem>
#include <memory>
#include <string>

#include "onto/registry.hpp"
#include "onto/syntax.hpp"

namespace onto {

struct ServiceConfig {
    std::filesystem::path store_root = "ontoserve-data/store";
    std::filesystem::path archive_root = "ontoserve-data/archive";
    std::string base_iri = "http://example.org";
    std::string listen_address = "127.0.0.1:8080";
    std::chrono::milliseconds default_timeout{30000};
    int page_size = 1000;
};

// Flat key=value configuration file ('#' starts a comment). Keys: store-root,
// archive-root, base-iri, listen-address, default-timeout (milliseconds),
// page-size.
ServiceConfig load_service_config(const std::filesystem::path& file);

// ONTOSERVE_STORE_ROOT, ONTOSERVE_ARCHIVE_ROOT, ONTOSERVE_BASE_IRI,
// ONTOSERVE_LISTEN_ADDRESS, ONTOSERVE_DEFAULT_TIMEOUT, ONTOSERVE_PAGE_SIZE.
void apply_env_overrides(ServiceConfig& config);

// Picks the dump format from an Accept header value; empty and */* default to
// Turtle. nullopt means nothing acceptable (a 406).
std::optional<SyntaxFormat> negotiate_format(const std::string& accept_header);

// The HTTP face of the datahub: registration, dumps with content negotiation,
// version listings, view exports, search, and validation jobs. Every error
// body is JSON with a stable "error" code field.
class HttpService {
public:
    HttpService(Registry& registry, ServiceConfig config);
    ~HttpService();

    HttpService(const HttpService&) = delete;
    HttpService& operator=(const HttpService&) = delete;

    // Binds per config.listen_address (port 0 picks a free port) and serves
    // on a background thread; returns the bound port.
    int start();

    // Binds and serves on the calling thread until stop().
    void serve();

    void stop();

    // http://host:port, valid after start().
    const std::string& base_url() const noexcept { return base_url_; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    std::string base_url_;
};

}  // namespace onto

#endif
