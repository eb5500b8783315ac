#ifndef ONTO_MOCK_ENDPOINT_HPP
#define ONTO_MOCK_ENDPOINT_HPP

#include <memory>
#include <string>

#include "onto/quad_store.hpp"

namespace onto {

// A small HTTP server that exposes a local quad store through the SPARQL
// protocol subset the validator emits (form-encoded POST or GET with a
// `query` parameter, answering application/sparql-results+json). Ships as a
// test utility so validation scenarios run without a network.
class MockSparqlEndpoint {
public:
    explicit MockSparqlEndpoint(const QuadStore& store, std::string path = "/sparql");
    ~MockSparqlEndpoint();

    MockSparqlEndpoint(const MockSparqlEndpoint&) = delete;
    MockSparqlEndpoint& operator=(const MockSparqlEndpoint&) = delete;

    // Binds and serves on a background thread. port 0 picks a free port.
    // Returns the bound port.
    int start(const std::string& host = "127.0.0.1", int port = 0);
    void stop();

    // http://host:port/path, valid after start().
    const std::string& url() const noexcept { return url_; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    std::string url_;
};

}  // namespace onto

#endif
