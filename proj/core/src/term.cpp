#include "onto/term.hpp"

#include <string>

#include "detail/text.hpp"
#include "onto/error.hpp"
#include "onto/vocab.hpp"

namespace onto {

using detail::is_ascii_alnum;
using detail::is_ascii_alpha;

Term Term::iri(std::string value) {
    return Term(TermKind::iri, std::move(value), {}, {});
}

Term Term::blank(std::string label) {
    return Term(TermKind::blank, std::move(label), {}, {});
}

Term Term::literal(std::string lexical) {
    return Term(TermKind::literal, std::move(lexical), std::string(vocab::xsd_string), {});
}

Term Term::literal(std::string lexical, std::string datatype_iri) {
    return Term(TermKind::literal, std::move(lexical), std::move(datatype_iri), {});
}

Term Term::lang_literal(std::string lexical, std::string language) {
    return Term(TermKind::literal, std::move(lexical), std::string(vocab::rdf_lang_string),
                std::move(language));
}

static bool has_scheme(std::string_view s) {
    if (s.empty() || !is_ascii_alpha(s[0])) return false;
    for (std::size_t i = 1; i < s.size(); ++i) {
        char c = s[i];
        if (c == ':') return true;
        if (!is_ascii_alnum(c) && c != '+' && c != '-' && c != '.') return false;
    }
    return false;
}

bool is_valid_iri(std::string_view text) {
    if (!has_scheme(text)) return false;
    for (unsigned char c : text) {
        if (c <= 0x20 || c == 0x7f) return false;
        switch (c) {
            case '<':
            case '>':
            case '"':
            case '{':
            case '}':
            case '|':
            case '^':
            case '`':
            case '\\':
                return false;
            default: break;
        }
    }
    return true;
}

Term make_iri(std::string_view text) {
    std::string_view trimmed = detail::trim(text);
    if (trimmed.empty())
        throw Error(Errc::invalid_iri, "empty IRI");
    if (!has_scheme(trimmed))
        throw Error(Errc::invalid_iri, "not an absolute IRI: '" + std::string(trimmed) + "'");
    if (!is_valid_iri(trimmed))
        throw Error(Errc::invalid_iri, "illegal character in IRI: '" + std::string(trimmed) + "'");
    return Term::iri(std::string(trimmed));
}

namespace {

struct IriParts {
    std::string_view scheme;     // without ':'
    std::string_view authority;  // without leading "//", may be empty and absent
    bool has_authority = false;
    std::string_view path;
    std::string_view query;  // without '?'
    bool has_query = false;
};

IriParts split_iri(std::string_view iri) {
    IriParts p;
    auto colon = iri.find(':');
    p.scheme = iri.substr(0, colon);
    std::string_view rest = iri.substr(colon + 1);
    if (auto hash = rest.find('#'); hash != std::string_view::npos) rest = rest.substr(0, hash);
    if (rest.substr(0, 2) == "//") {
        p.has_authority = true;
        rest.remove_prefix(2);
        auto end = rest.find_first_of("/?");
        if (end == std::string_view::npos) {
            p.authority = rest;
            rest = {};
        } else {
            p.authority = rest.substr(0, end);
            rest = rest.substr(end);
            if (rest[0] == '?') {
                // empty path, query follows
            }
        }
    }
    if (auto q = rest.find('?'); q != std::string_view::npos) {
        p.path = rest.substr(0, q);
        p.query = rest.substr(q + 1);
        p.has_query = true;
    } else {
        p.path = rest;
    }
    return p;
}

std::string remove_dot_segments(std::string_view path) {
    std::string input(path);
    std::string output;
    while (!input.empty()) {
        if (input.rfind("../", 0) == 0) {
            input.erase(0, 3);
        } else if (input.rfind("./", 0) == 0) {
            input.erase(0, 2);
        } else if (input.rfind("/./", 0) == 0) {
            input.erase(0, 2);
        } else if (input == "/.") {
            input = "/";
        } else if (input.rfind("/../", 0) == 0) {
            input.erase(0, 3);
            auto slash = output.find_last_of('/');
            output.erase(slash == std::string::npos ? 0 : slash);
        } else if (input == "/..") {
            input = "/";
            auto slash = output.find_last_of('/');
            output.erase(slash == std::string::npos ? 0 : slash);
        } else if (input == "." || input == "..") {
            input.clear();
        } else {
            auto next = input.find('/', 1);
            output += input.substr(0, next);
            input.erase(0, next == std::string::npos ? input.size() : next);
        }
    }
    return output;
}

std::string merge_paths(const IriParts& base, std::string_view ref_path) {
    if (base.has_authority && base.path.empty()) return "/" + std::string(ref_path);
    auto slash = base.path.find_last_of('/');
    if (slash == std::string_view::npos) return std::string(ref_path);
    return std::string(base.path.substr(0, slash + 1)) + std::string(ref_path);
}

}  // namespace

std::string resolve_iri(std::string_view reference, std::string_view base) {
    if (has_scheme(reference)) return std::string(reference);

    IriParts b = split_iri(base);
    std::string result(b.scheme);
    result += ':';

    std::string_view ref = reference;
    std::string_view fragment;
    if (auto hash = ref.find('#'); hash != std::string_view::npos) {
        fragment = ref.substr(hash);
        ref = ref.substr(0, hash);
    }

    if (ref.substr(0, 2) == "//") {
        result += ref;
        result += fragment;
        return result;
    }

    if (b.has_authority) {
        result += "//";
        result += b.authority;
    }

    if (ref.empty()) {
        result += b.path;
        if (b.has_query) {
            result += '?';
            result += b.query;
        }
    } else if (ref[0] == '?') {
        result += b.path;
        result += ref;
    } else if (ref[0] == '/') {
        result += remove_dot_segments(ref);
    } else {
        result += remove_dot_segments(merge_paths(b, ref));
    }
    result += fragment;
    return result;
}

std::string to_ntriples(const Term& term) {
    switch (term.kind()) {
        case TermKind::iri:
            return "<" + detail::escape_iriref(term.value()) + ">";
        case TermKind::blank:
            return "_:" + term.value();
        case TermKind::literal: {
            std::string out = "\"" + detail::escape_string_literal(term.value()) + "\"";
            if (term.has_language()) {
                out += "@" + term.language();
            } else if (term.datatype() != vocab::xsd_string) {
                out += "^^<" + detail::escape_iriref(term.datatype()) + ">";
            }
            return out;
        }
    }
    return {};
}

std::string to_ntriples(const Triple& t) {
    return to_ntriples(t.subject) + " " + to_ntriples(t.predicate) + " " + to_ntriples(t.object) +
           " .";
}

}  // namespace onto
