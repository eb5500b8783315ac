#include "onto/mock_endpoint.hpp"

#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "onto/error.hpp"
#include "onto/sparql.hpp"

namespace onto {

struct MockSparqlEndpoint::Impl {
    const QuadStore* store;
    std::string path;
    httplib::Server server;
    std::thread thread;
};

MockSparqlEndpoint::MockSparqlEndpoint(const QuadStore& store, std::string path)
    : impl_(std::make_unique<Impl>()) {
    impl_->store = &store;
    impl_->path = std::move(path);

    auto handle = [this](const httplib::Request& req, httplib::Response& res) {
        std::string query = req.get_param_value("query");
        if (query.empty()) {
            res.status = 400;
            res.set_content(R"({"error":"missing query parameter"})", "application/json");
            return;
        }
        try {
            auto results = evaluate_sparql_subset(*impl_->store, query);
            res.set_content(sparql_results_to_json(results), "application/sparql-results+json");
        } catch (const Error& e) {
            res.status = 400;
            nlohmann::json body;
            body["error"] = e.code_name();
            body["message"] = e.what();
            res.set_content(body.dump(), "application/json");
        }
    };
    impl_->server.Get(impl_->path, handle);
    impl_->server.Post(impl_->path, handle);
}

MockSparqlEndpoint::~MockSparqlEndpoint() { stop(); }

int MockSparqlEndpoint::start(const std::string& host, int port) {
    int bound = port;
    if (port == 0) {
        bound = impl_->server.bind_to_any_port(host);
        if (bound <= 0) throw Error(Errc::io_error, "mock endpoint cannot bind a port");
    } else {
        if (!impl_->server.bind_to_port(host, port))
            throw Error(Errc::io_error, "mock endpoint cannot bind port " + std::to_string(port));
    }
    impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
    url_ = "http://" + host + ":" + std::to_string(bound) + impl_->path;
    return bound;
}

void MockSparqlEndpoint::stop() {
    if (impl_ && impl_->thread.joinable()) {
        impl_->server.stop();
        impl_->thread.join();
    }
}

}  // namespace onto
