#ifndef ONTO_SYNTAX_HPP
#define ONTO_SYNTAX_HPP

#include <optional>
#include <string>
#include <string_view>

#include "onto/graph.hpp"

namespace onto {

// The four dump formats. Turtle and N-Triples are also accepted as input;
// RDF/XML and RDF/JSON are output-only.
enum class SyntaxFormat { turtle, ntriples, rdfxml, rdfjson };

// Canonical media type, e.g. "text/turtle".
std::string_view media_type(SyntaxFormat format);

// Inverse of media_type; ignores parameters such as ";charset=...".
std::optional<SyntaxFormat> format_for_media_type(std::string_view media_type);

// Accepts short and long spellings: ttl/turtle, nt/ntriples, rdfxml, rdfjson.
std::optional<SyntaxFormat> format_from_name(std::string_view name);
std::string_view format_name(SyntaxFormat format);

// Parses a Turtle or N-Triples document into a graph (asserted triples plus
// the document's prefix map). Relative IRIs resolve against `base`; without a
// base they are rejected with unresolved-relative-iri. The first syntax error
// aborts the parse (Error with a ParseDiagnostic).
Graph parse(std::string_view document, SyntaxFormat format,
            std::optional<std::string> base = std::nullopt);

// Serializes into any of the four formats. Turtle and N-Triples outputs
// re-parse to a graph ground-equal to the input. Output is deterministic:
// the same graph always serializes to identical bytes.
std::string serialize(const Graph& g, SyntaxFormat format);

}  // namespace onto

#endif
