#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "detail/text.hpp"
#include "onto/error.hpp"
#include "onto/syntax.hpp"
#include "onto/term.hpp"
#include "onto/vocab.hpp"

// Recursive-descent parser for Turtle; N-Triples is handled as a restricted
// mode of the same machinery (no directives, prefixed names, keywords, or
// bracket syntax). The first error aborts the parse.

namespace onto {

namespace {

using detail::is_ascii_alnum;
using detail::is_ascii_alpha;
using detail::is_ascii_digit;

bool is_pn_chars_base(unsigned char c) {
    // ASCII letters; bytes >= 0x80 are accepted as name characters, which is a
    // permissive superset of the PN_CHARS_BASE unicode ranges.
    return is_ascii_alpha(static_cast<char>(c)) || c >= 0x80;
}

bool is_pn_chars(unsigned char c) {
    return is_pn_chars_base(c) || c == '_' || c == '-' || is_ascii_digit(static_cast<char>(c));
}

bool is_local_esc(char c) {
    static const std::string chars = "_~.-!$&'()*+,;=/?#@%";
    return chars.find(c) != std::string::npos;
}

class Parser {
public:
    Parser(std::string_view text, std::optional<std::string> base, bool ntriples_mode)
        : text_(text), base_(std::move(base)), nt_mode_(ntriples_mode) {}

    Graph run() {
        skip_ws();
        while (!at_end()) {
            parse_statement();
            skip_ws();
        }
        return std::move(graph_);
    }

private:
    // ---- scanner -----------------------------------------------------------

    bool at_end() const { return pos_ >= text_.size(); }

    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }

    char advance() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_ws() {
        while (!at_end()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '#') {
                while (!at_end() && peek() != '\n') advance();
            } else {
                break;
            }
        }
    }

    [[noreturn]] void fail(const std::string& message) const { fail_at(line_, col_, message); }

    [[noreturn]] void fail_at(int line, int col, const std::string& message) const {
        throw Error(Errc::syntax_error, message, ParseDiagnostic{line, col, message});
    }

    void expect(char c, const char* what) {
        if (at_end() || peek() != c) fail(std::string("expected '") + c + "' " + what);
        advance();
    }

    // ---- blank node labels -------------------------------------------------

    Term explicit_blank(const std::string& label) {
        auto it = explicit_remap_.find(label);
        if (it != explicit_remap_.end()) return Term::blank(it->second);
        if (generated_.count(label)) {
            // An explicit label collided with an auto-generated one; remap it.
            std::string fresh = fresh_blank_label();
            explicit_remap_[label] = fresh;
            return Term::blank(fresh);
        }
        seen_explicit_.insert(label);
        return Term::blank(label);
    }

    std::string fresh_blank_label() {
        std::string label;
        do {
            label = "genid" + std::to_string(++blank_counter_);
        } while (seen_explicit_.count(label));
        generated_.insert(label);
        return label;
    }

    Term fresh_blank() { return Term::blank(fresh_blank_label()); }

    // ---- IRIs ----------------------------------------------------------------

    static bool has_scheme(std::string_view s) {
        if (s.empty() || !is_ascii_alpha(s[0])) return false;
        for (std::size_t i = 1; i < s.size(); ++i) {
            char c = s[i];
            if (c == ':') return true;
            if (!is_ascii_alnum(c) && c != '+' && c != '-' && c != '.') return false;
        }
        return false;
    }

    Term finish_iri(std::string text, int at_line, int at_col) {
        if (!has_scheme(text)) {
            // Relative reference (or empty, which refers to the base itself).
            if (nt_mode_)
                fail_at(at_line, at_col, "relative IRI in N-Triples: '" + text + "'");
            if (!base_)
                throw Error(Errc::unresolved_relative_iri,
                            "relative IRI '" + text + "' with no base",
                            ParseDiagnostic{at_line, at_col, "relative IRI with no base"});
            text = resolve_iri(text, *base_);
        }
        if (!is_valid_iri(text))
            fail_at(at_line, at_col, "invalid IRI: '" + text + "'");
        return Term::iri(std::move(text));
    }

    Term parse_iriref() {
        int at_line = line_, at_col = col_;
        expect('<', "to open IRI");
        std::string out;
        while (true) {
            if (at_end()) fail("unterminated IRI");
            char c = advance();
            if (c == '>') break;
            if (c == '\\') {
                out += unicode_escape("IRI");
            } else if (static_cast<unsigned char>(c) <= 0x20) {
                fail_at(at_line, at_col, "whitespace or control character in IRI");
            } else {
                out += c;
            }
        }
        return finish_iri(std::move(out), at_line, at_col);
    }

    std::string unicode_escape(const char* where) {
        if (at_end()) fail("truncated escape");
        char kind = advance();
        int digits;
        if (kind == 'u')
            digits = 4;
        else if (kind == 'U')
            digits = 8;
        else
            fail(std::string("illegal escape '\\") + kind + "' in " + where);
        std::uint32_t code = 0;
        for (int i = 0; i < digits; ++i) {
            if (at_end()) fail("truncated unicode escape");
            char c = advance();
            code <<= 4;
            if (is_ascii_digit(c))
                code |= static_cast<std::uint32_t>(c - '0');
            else if (c >= 'a' && c <= 'f')
                code |= static_cast<std::uint32_t>(c - 'a' + 10);
            else if (c >= 'A' && c <= 'F')
                code |= static_cast<std::uint32_t>(c - 'A' + 10);
            else
                fail("invalid hex digit in unicode escape");
        }
        return detail::utf8_encode(code);
    }

    // Prefixed name, e.g. foaf:Person. Returns the expanded IRI term.
    Term parse_prefixed_name() {
        int at_line = line_, at_col = col_;
        std::string prefix;
        while (!at_end() && peek() != ':' &&
               (is_pn_chars(static_cast<unsigned char>(peek())) || peek() == '.')) {
            prefix += advance();
        }
        // PN_PREFIX cannot end with '.'
        if (!prefix.empty() && prefix.back() == '.')
            fail_at(at_line, at_col, "prefix ends with '.'");
        expect(':', "in prefixed name");
        auto it = prefixes_.find(prefix);
        if (it == prefixes_.end())
            fail_at(at_line, at_col, "undeclared prefix '" + prefix + ":'");

        std::string local;
        while (!at_end()) {
            unsigned char c = static_cast<unsigned char>(peek());
            if (is_pn_chars(c) || c == ':' || c == '.') {
                local += advance();
            } else if (c == '%') {
                local += advance();
                for (int i = 0; i < 2; ++i) {
                    if (at_end() || !std::isxdigit(static_cast<unsigned char>(peek())))
                        fail("invalid %-sequence in local name");
                    local += advance();
                }
            } else if (c == '\\') {
                advance();
                if (at_end() || !is_local_esc(peek())) fail("invalid local name escape");
                local += advance();
            } else {
                break;
            }
        }
        // Trailing dots belong to the statement, not the name.
        std::size_t chop = 0;
        while (chop < local.size() && local[local.size() - 1 - chop] == '.') ++chop;
        if (chop > 0) {
            local.resize(local.size() - chop);
            rewind(chop);
        }
        return finish_iri(it->second + local, at_line, at_col);
    }

    // Puts `n` just-consumed dot characters back into the stream.
    void rewind(std::size_t n) {
        pos_ -= n;
        col_ -= static_cast<int>(n);  // dots never span lines
    }

    // ---- literals ------------------------------------------------------------

    Term parse_rdf_literal() {
        std::string lexical = parse_string();
        if (!at_end() && peek() == '@') {
            advance();
            std::string tag;
            while (!at_end() && (is_ascii_alnum(peek()) || peek() == '-')) tag += advance();
            if (tag.empty() || !is_ascii_alpha(tag[0])) fail("malformed language tag");
            return Term::lang_literal(std::move(lexical), std::move(tag));
        }
        if (peek() == '^' && peek(1) == '^') {
            advance();
            advance();
            Term dt = parse_iri_any();
            return Term::literal(std::move(lexical), dt.value());
        }
        return Term::literal(std::move(lexical));
    }

    std::string parse_string() {
        char quote = peek();
        if (quote != '"' && quote != '\'') fail("expected string literal");
        bool long_string = false;
        if (peek(1) == quote && peek(2) == quote) {
            if (nt_mode_) fail("long string literal in N-Triples");
            long_string = true;
            advance();
            advance();
            advance();
        } else {
            advance();
        }
        if (nt_mode_ && quote == '\'') fail("single-quoted string in N-Triples");

        std::string out;
        while (true) {
            if (at_end()) fail("unterminated string literal");
            char c = peek();
            if (!long_string && (c == '\n' || c == '\r')) fail("newline in string literal");
            if (c == quote) {
                if (!long_string) {
                    advance();
                    break;
                }
                if (peek(1) == quote && peek(2) == quote) {
                    advance();
                    advance();
                    advance();
                    break;
                }
                out += advance();
                continue;
            }
            advance();
            if (c == '\\') {
                if (at_end()) fail("truncated escape");
                char e = peek();
                switch (e) {
                    case 't': out += '\t'; advance(); break;
                    case 'b': out += '\b'; advance(); break;
                    case 'n': out += '\n'; advance(); break;
                    case 'r': out += '\r'; advance(); break;
                    case 'f': out += '\f'; advance(); break;
                    case '"': out += '"'; advance(); break;
                    case '\'': out += '\''; advance(); break;
                    case '\\': out += '\\'; advance(); break;
                    case 'u':
                    case 'U': out += unicode_escape("string"); break;
                    default: fail(std::string("illegal escape '\\") + e + "' in string");
                }
            } else {
                out += c;
            }
        }
        return out;
    }

    Term parse_numeric_literal() {
        std::string lex;
        if (peek() == '+' || peek() == '-') lex += advance();
        bool digits_before = false, digits_after = false, has_dot = false, has_exp = false;
        while (is_ascii_digit(peek())) {
            lex += advance();
            digits_before = true;
        }
        if (peek() == '.' && is_ascii_digit(peek(1))) {
            has_dot = true;
            lex += advance();
            while (is_ascii_digit(peek())) {
                lex += advance();
                digits_after = true;
            }
        }
        if ((peek() == 'e' || peek() == 'E') &&
            (is_ascii_digit(peek(1)) ||
             ((peek(1) == '+' || peek(1) == '-') && is_ascii_digit(peek(2))))) {
            has_exp = true;
            lex += advance();
            if (peek() == '+' || peek() == '-') lex += advance();
            while (is_ascii_digit(peek())) lex += advance();
        }
        if (!digits_before && !digits_after) fail("malformed numeric literal");
        std::string_view dt = has_exp   ? vocab::xsd_double
                              : has_dot ? vocab::xsd_decimal
                                        : vocab::xsd_integer;
        return Term::literal(std::move(lex), std::string(dt));
    }

    Term parse_iri_any() {
        if (peek() == '<') return parse_iriref();
        if (nt_mode_) fail("expected IRI");
        return parse_prefixed_name();
    }

    // ---- grammar -------------------------------------------------------------

    bool keyword_ahead(std::string_view word) const {
        // Case-insensitive match followed by a non-name character.
        if (pos_ + word.size() > text_.size()) return false;
        for (std::size_t i = 0; i < word.size(); ++i) {
            if (detail::ascii_lower(text_[pos_ + i]) != detail::ascii_lower(word[i])) return false;
        }
        char after = pos_ + word.size() < text_.size() ? text_[pos_ + word.size()] : ' ';
        return !is_pn_chars(static_cast<unsigned char>(after)) && after != ':';
    }

    bool word_ahead(std::string_view word) const {
        // Case-sensitive variant for Turtle's lowercase-only keywords.
        if (pos_ + word.size() > text_.size()) return false;
        if (text_.substr(pos_, word.size()) != word) return false;
        char after = pos_ + word.size() < text_.size() ? text_[pos_ + word.size()] : ' ';
        return !is_pn_chars(static_cast<unsigned char>(after)) && after != ':';
    }

    void consume_word(std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) advance();
    }

    void parse_statement() {
        if (!nt_mode_) {
            if (peek() == '@') {
                advance();
                if (word_ahead("prefix")) {
                    consume_word(6);
                    parse_prefix_directive(/*sparql_style=*/false);
                    return;
                }
                if (word_ahead("base")) {
                    consume_word(4);
                    parse_base_directive(/*sparql_style=*/false);
                    return;
                }
                fail("unknown directive");
            }
            if (keyword_ahead("prefix")) {
                consume_word(6);
                parse_prefix_directive(/*sparql_style=*/true);
                return;
            }
            if (keyword_ahead("base")) {
                consume_word(4);
                parse_base_directive(/*sparql_style=*/true);
                return;
            }
        }
        parse_triples();
        skip_ws();
        expect('.', "after statement");
    }

    void parse_prefix_directive(bool sparql_style) {
        skip_ws();
        std::string prefix;
        while (!at_end() && peek() != ':' && is_pn_chars(static_cast<unsigned char>(peek()))) {
            prefix += advance();
        }
        expect(':', "in @prefix directive");
        skip_ws();
        if (peek() != '<') fail("expected IRI in @prefix directive");
        Term ns = parse_iriref();
        prefixes_[prefix] = ns.value();
        graph_.set_prefix(prefix, ns.value());
        if (!sparql_style) {
            skip_ws();
            expect('.', "after @prefix directive");
        }
    }

    void parse_base_directive(bool sparql_style) {
        skip_ws();
        if (peek() != '<') fail("expected IRI in @base directive");
        Term base = parse_iriref();  // resolves against the current base if relative
        base_ = base.value();
        if (!sparql_style) {
            skip_ws();
            expect('.', "after @base directive");
        }
    }

    void parse_triples() {
        skip_ws();
        if (at_end()) fail("unexpected end of input");
        Term subject;
        bool property_list_subject = false;
        char c = peek();
        if (c == '<') {
            subject = parse_iriref();
        } else if (c == '_') {
            subject = parse_blank_node_label();
        } else if (nt_mode_) {
            fail("expected subject");
        } else if (c == '[') {
            subject = parse_blank_node_property_list();
            property_list_subject = true;
        } else if (c == '(') {
            subject = parse_collection();
        } else {
            subject = parse_prefixed_name();
        }
        skip_ws();
        // "[ ... ] ." is a legal statement on its own.
        if (property_list_subject && peek() == '.') return;
        parse_predicate_object_list(subject);
    }

    Term parse_blank_node_label() {
        int at_line = line_, at_col = col_;
        expect('_', "in blank node label");
        expect(':', "in blank node label");
        std::string label;
        char first = peek();
        if (at_end() || !(is_pn_chars_base(static_cast<unsigned char>(first)) || first == '_' ||
                          is_ascii_digit(first)))
            fail_at(at_line, at_col, "malformed blank node label");
        while (!at_end() && (is_pn_chars(static_cast<unsigned char>(peek())) || peek() == '.')) {
            label += advance();
        }
        std::size_t chop = 0;
        while (chop < label.size() && label[label.size() - 1 - chop] == '.') ++chop;
        if (chop > 0) {
            label.resize(label.size() - chop);
            rewind(chop);
        }
        if (label.empty()) fail_at(at_line, at_col, "malformed blank node label");
        return explicit_blank(label);
    }

    void parse_predicate_object_list(const Term& subject) {
        while (true) {
            skip_ws();
            Term predicate = parse_verb();
            parse_object_list(subject, predicate);
            skip_ws();
            if (nt_mode_ || peek() != ';') break;
            advance();
            skip_ws();
            // Allow trailing ';' before '.' or ']'.
            while (peek() == ';') {
                advance();
                skip_ws();
            }
            if (peek() == '.' || peek() == ']') break;
        }
    }

    Term parse_verb() {
        if (!nt_mode_ && word_ahead("a")) {
            advance();
            return Term::iri(std::string(vocab::rdf_type));
        }
        if (peek() == '<') return parse_iriref();
        if (nt_mode_) fail("expected predicate IRI");
        return parse_prefixed_name();
    }

    void parse_object_list(const Term& subject, const Term& predicate) {
        while (true) {
            skip_ws();
            Term object = parse_object();
            graph_.insert(Triple{subject, predicate, object});
            skip_ws();
            if (nt_mode_ || peek() != ',') break;
            advance();
        }
    }

    Term parse_object() {
        if (at_end()) fail("unexpected end of input in object position");
        char c = peek();
        if (c == '<') return parse_iriref();
        if (c == '_') return parse_blank_node_label();
        if (c == '"' || c == '\'') return parse_rdf_literal();
        if (nt_mode_) fail("expected object term");
        if (c == '[') return parse_blank_node_property_list();
        if (c == '(') return parse_collection();
        if (c == '+' || c == '-' || c == '.' || is_ascii_digit(c)) return parse_numeric_literal();
        if (word_ahead("true")) {
            consume_word(4);
            return Term::literal("true", std::string(vocab::xsd_boolean));
        }
        if (word_ahead("false")) {
            consume_word(5);
            return Term::literal("false", std::string(vocab::xsd_boolean));
        }
        return parse_prefixed_name();
    }

    Term parse_blank_node_property_list() {
        expect('[', "to open blank node");
        skip_ws();
        Term node = fresh_blank();
        if (peek() == ']') {
            advance();
            return node;  // ANON
        }
        parse_predicate_object_list(node);
        skip_ws();
        expect(']', "to close blank node");
        return node;
    }

    Term parse_collection() {
        expect('(', "to open collection");
        std::vector<Term> items;
        while (true) {
            skip_ws();
            if (at_end()) fail("unterminated collection");
            if (peek() == ')') {
                advance();
                break;
            }
            items.push_back(parse_object());
        }
        if (items.empty()) return Term::iri(std::string(vocab::rdf_nil));
        Term head = fresh_blank();
        Term node = head;
        for (std::size_t i = 0; i < items.size(); ++i) {
            graph_.insert(Triple{node, Term::iri(std::string(vocab::rdf_first)), items[i]});
            Term rest = (i + 1 == items.size()) ? Term::iri(std::string(vocab::rdf_nil))
                                                : fresh_blank();
            graph_.insert(Triple{node, Term::iri(std::string(vocab::rdf_rest)), rest});
            node = rest;
        }
        return head;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    std::optional<std::string> base_;
    bool nt_mode_;

    Graph graph_;
    std::unordered_map<std::string, std::string> prefixes_;

    long blank_counter_ = 0;
    std::unordered_set<std::string> seen_explicit_;
    std::unordered_set<std::string> generated_;
    std::unordered_map<std::string, std::string> explicit_remap_;
};

}  // namespace

Graph parse(std::string_view document, SyntaxFormat format, std::optional<std::string> base) {
    switch (format) {
        case SyntaxFormat::turtle: return Parser(document, std::move(base), false).run();
        case SyntaxFormat::ntriples: return Parser(document, std::move(base), true).run();
        case SyntaxFormat::rdfxml:
        case SyntaxFormat::rdfjson:
            throw Error(Errc::unsupported_format,
                        std::string(format_name(format)) + " input is not supported");
    }
    throw Error(Errc::unsupported_format, "unknown format");
}

}  // namespace onto
