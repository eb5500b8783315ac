// Serves an existing quad store over the SPARQL protocol subset the
// validator speaks. Test utility: lets validation scenarios run against a
// real HTTP endpoint with no external network.

#include <atomic>
#include <chrono>
#include <csignal>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "onto/error.hpp"
#include "onto/mock_endpoint.hpp"
#include "onto/quad_store.hpp"

namespace {
std::atomic<bool> stop_requested{false};
void on_signal(int) { stop_requested = true; }
}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mock-sparql-endpoint - serve a local quad store as a SPARQL endpoint"};
    std::string store_root;
    std::string host = "127.0.0.1";
    int port = 8890;
    std::string path = "/sparql";
    app.add_option("--store", store_root, "Quad store directory")->required();
    app.add_option("--host", host, "Bind address");
    app.add_option("--port", port, "Port (0 picks a free one)");
    app.add_option("--path", path, "Endpoint path");
    CLI11_PARSE(app, argc, argv);

    try {
        onto::QuadStore store(store_root);
        onto::MockSparqlEndpoint endpoint(store, path);
        endpoint.start(host, port);
        std::cerr << "serving " << store_root << " at " << endpoint.url() << "\n";
        std::signal(SIGINT, on_signal);
        std::signal(SIGTERM, on_signal);
        while (!stop_requested) {
            std::this_thread::sleep_for(std::chrono::milliseconds(200));
        }
        endpoint.stop();
    } catch (const onto::Error& e) {
        std::cerr << "error: " << e.code_name() << ": " << e.what() << "\n";
        return onto::errc_exit_code(e.code());
    }
    return 0;
}
