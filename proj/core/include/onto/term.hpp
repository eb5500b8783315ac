#ifndef ONTO_TERM_HPP
#define ONTO_TERM_HPP

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace onto {

enum class TermKind { iri, blank, literal };

// One RDF term: an IRI, a blank node, or a literal. Immutable value type.
//
// Equality is structural: two literals with the same lexical form but
// different datatypes are distinct terms. A literal carries either a plain
// datatype IRI or a language tag (in which case the datatype is
// rdf:langString); never both.
class Term {
public:
    Term() = default;

    static Term iri(std::string value);
    static Term blank(std::string label);
    // Plain literal; datatype defaults to xsd:string.
    static Term literal(std::string lexical);
    static Term literal(std::string lexical, std::string datatype_iri);
    static Term lang_literal(std::string lexical, std::string language);

    TermKind kind() const noexcept { return kind_; }
    bool is_iri() const noexcept { return kind_ == TermKind::iri; }
    bool is_blank() const noexcept { return kind_ == TermKind::blank; }
    bool is_literal() const noexcept { return kind_ == TermKind::literal; }

    // IRI text, blank label, or literal lexical form depending on kind.
    const std::string& value() const noexcept { return value_; }
    const std::string& datatype() const noexcept { return datatype_; }
    const std::string& language() const noexcept { return language_; }
    bool has_language() const noexcept { return !language_.empty(); }

    auto operator<=>(const Term&) const = default;
    bool operator==(const Term&) const = default;

private:
    Term(TermKind kind, std::string value, std::string datatype, std::string language)
        : kind_(kind),
          value_(std::move(value)),
          datatype_(std::move(datatype)),
          language_(std::move(language)) {}

    TermKind kind_ = TermKind::iri;
    std::string value_;
    std::string datatype_;  // literals only
    std::string language_;  // language-tagged literals only
};

struct Triple {
    Term subject;    // iri or blank
    Term predicate;  // iri
    Term object;     // any

    auto operator<=>(const Triple&) const = default;
    bool operator==(const Triple&) const = default;
};

struct Quad {
    Triple triple;
    std::optional<Term> graph;  // absent = default graph

    auto operator<=>(const Quad&) const = default;
    bool operator==(const Quad&) const = default;
};

// Validating IRI constructor. Trims surrounding whitespace, then requires an
// absolute IRI (a scheme followed by ':') free of characters that cannot
// appear in an IRI reference. No other normalization is applied.
// Throws Error(invalid_iri) otherwise.
Term make_iri(std::string_view text);

// True iff text is acceptable to make_iri as-is (no trimming).
bool is_valid_iri(std::string_view text);

// Resolves a possibly-relative IRI reference against a base.
std::string resolve_iri(std::string_view reference, std::string_view base);

// N-Triples style rendering, used for diagnostics and deterministic ordering.
std::string to_ntriples(const Term& term);
std::string to_ntriples(const Triple& triple);

}  // namespace onto

#endif
