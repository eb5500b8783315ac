#ifndef ONTO_ERROR_HPP
#define ONTO_ERROR_HPP

#include <optional>
#include <stdexcept>
#include <string>

namespace onto {

// Position of a syntax problem inside a parsed document. Both fields are
// 1-based and always lie within the input text.
struct ParseDiagnostic {
    int line = 1;
    int column = 1;
    std::string message;
};

enum class Errc {
    invalid_iri,
    syntax_error,
    unsupported_format,
    unresolved_relative_iri,
    rdfxml_unencodable,
    io_error,
    lock_held,
    duplicate_version,
    unknown_prefix,
    unknown_version,
    version_already_latest,
    empty_query,
    network_error,
    endpoint_error,
    timeout,
    unknown_ontology,
    malformed_request,
    unsupported_media_type,
    usage_error,
};

// Stable machine-readable name, e.g. "unknown-prefix". Used verbatim in HTTP
// error bodies and CLI diagnostics.
const char* errc_name(Errc code);

// Distinct process exit code for the CLI (0 is success, 2 is usage).
int errc_exit_code(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    Error(Errc code, std::string message, ParseDiagnostic diagnostic)
        : std::runtime_error(std::move(message)),
          code_(code),
          diagnostic_(std::move(diagnostic)) {}

    Errc code() const noexcept { return code_; }
    const char* code_name() const noexcept { return errc_name(code_); }
    const std::optional<ParseDiagnostic>& diagnostic() const noexcept { return diagnostic_; }

private:
    Errc code_;
    std::optional<ParseDiagnostic> diagnostic_;
};

}  // namespace onto

#endif
