#include "onto/syntax.hpp"

#include "detail/text.hpp"

namespace onto {

std::string_view media_type(SyntaxFormat format) {
    switch (format) {
        case SyntaxFormat::turtle: return "text/turtle";
        case SyntaxFormat::ntriples: return "application/n-triples";
        case SyntaxFormat::rdfxml: return "application/rdf+xml";
        case SyntaxFormat::rdfjson: return "application/rdf+json";
    }
    return "application/octet-stream";
}

std::optional<SyntaxFormat> format_for_media_type(std::string_view mt) {
    auto semi = mt.find(';');
    if (semi != std::string_view::npos) mt = mt.substr(0, semi);
    std::string lowered = detail::ascii_lower_copy(detail::trim(mt));
    if (lowered == "text/turtle") return SyntaxFormat::turtle;
    if (lowered == "application/n-triples") return SyntaxFormat::ntriples;
    if (lowered == "application/rdf+xml") return SyntaxFormat::rdfxml;
    if (lowered == "application/rdf+json") return SyntaxFormat::rdfjson;
    return std::nullopt;
}

std::optional<SyntaxFormat> format_from_name(std::string_view name) {
    std::string lowered = detail::ascii_lower_copy(detail::trim(name));
    if (lowered == "ttl" || lowered == "turtle") return SyntaxFormat::turtle;
    if (lowered == "nt" || lowered == "ntriples" || lowered == "n-triples")
        return SyntaxFormat::ntriples;
    if (lowered == "rdfxml" || lowered == "rdf/xml" || lowered == "xml")
        return SyntaxFormat::rdfxml;
    if (lowered == "rdfjson" || lowered == "rdf/json") return SyntaxFormat::rdfjson;
    return std::nullopt;
}

std::string_view format_name(SyntaxFormat format) {
    switch (format) {
        case SyntaxFormat::turtle: return "turtle";
        case SyntaxFormat::ntriples: return "ntriples";
        case SyntaxFormat::rdfxml: return "rdfxml";
        case SyntaxFormat::rdfjson: return "rdfjson";
    }
    return "unknown";
}

}  // namespace onto
