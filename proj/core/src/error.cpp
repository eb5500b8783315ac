#include "onto/error.hpp"

namespace onto {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::invalid_iri: return "invalid-iri";
        case Errc::syntax_error: return "syntax-error";
        case Errc::unsupported_format: return "unsupported-format";
        case Errc::unresolved_relative_iri: return "unresolved-relative-iri";
        case Errc::rdfxml_unencodable: return "rdfxml-unencodable";
        case Errc::io_error: return "io-error";
        case Errc::lock_held: return "lock-held";
        case Errc::duplicate_version: return "duplicate-version";
        case Errc::unknown_prefix: return "unknown-prefix";
        case Errc::unknown_version: return "unknown-version";
        case Errc::version_already_latest: return "version-already-latest";
        case Errc::empty_query: return "empty-query";
        case Errc::network_error: return "network-error";
        case Errc::endpoint_error: return "endpoint-error";
        case Errc::timeout: return "timeout";
        case Errc::unknown_ontology: return "unknown-ontology";
        case Errc::malformed_request: return "malformed-request";
        case Errc::unsupported_media_type: return "unsupported-media-type";
        case Errc::usage_error: return "usage-error";
    }
    return "unknown-error";
}

int errc_exit_code(Errc code) {
    switch (code) {
        case Errc::usage_error: return 2;
        case Errc::invalid_iri: return 3;
        case Errc::syntax_error: return 4;
        case Errc::unsupported_format: return 5;
        case Errc::unresolved_relative_iri: return 6;
        case Errc::rdfxml_unencodable: return 7;
        case Errc::io_error: return 8;
        case Errc::lock_held: return 9;
        case Errc::duplicate_version: return 10;
        case Errc::unknown_prefix: return 11;
        case Errc::unknown_version: return 12;
        case Errc::version_already_latest: return 13;
        case Errc::empty_query: return 14;
        case Errc::network_error: return 15;
        case Errc::endpoint_error: return 16;
        case Errc::timeout: return 17;
        case Errc::unknown_ontology: return 18;
        case Errc::malformed_request: return 19;
        case Errc::unsupported_media_type: return 20;
    }
    return 1;
}

}  // namespace onto
