#ifndef ONTO_DETAIL_TEXT_HPP
#define ONTO_DETAIL_TEXT_HPP

#include <cstdint>
#include <string>
#include <string_view>

// Small text helpers shared by the parsers and serializers.
namespace onto::detail {

inline bool is_ascii_alpha(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

inline bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }

inline bool is_ascii_alnum(char c) { return is_ascii_alpha(c) || is_ascii_digit(c); }

inline char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? char(c - 'A' + 'a') : c; }

inline std::string ascii_lower_copy(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) out.push_back(ascii_lower(c));
    return out;
}

inline bool contains_ci(std::string_view haystack, std::string_view needle) {
    if (needle.empty()) return true;
    if (needle.size() > haystack.size()) return false;
    for (std::size_t i = 0; i + needle.size() <= haystack.size(); ++i) {
        bool hit = true;
        for (std::size_t j = 0; j < needle.size(); ++j) {
            if (ascii_lower(haystack[i + j]) != ascii_lower(needle[j])) {
                hit = false;
                break;
            }
        }
        if (hit) return true;
    }
    return false;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n' ||
                          s.front() == '\r' || s.front() == '\f' || s.front() == '\v'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' ||
                          s.back() == '\r' || s.back() == '\f' || s.back() == '\v'))
        s.remove_suffix(1);
    return s;
}

std::string utf8_encode(std::uint32_t code_point);

// Escapes a literal lexical form for N-Triples / Turtle single-quoted strings.
std::string escape_string_literal(std::string_view s);

// Escapes text for an <IRIREF>.
std::string escape_iriref(std::string_view s);

// &amp; / &lt; flavored escaping for XML text and attribute values.
std::string escape_xml(std::string_view s);

// Minimal HTML body escaping (same charset as XML text).
inline std::string escape_html(std::string_view s) { return escape_xml(s); }

// Local name of an IRI: the part after the last '#' or '/', or the whole IRI.
std::string_view iri_local_name(std::string_view iri);

// Percent-encodes for application/x-www-form-urlencoded bodies.
std::string url_encode(std::string_view s);

}  // namespace onto::detail

#endif
