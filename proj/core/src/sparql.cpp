#include "onto/sparql.hpp"

#include <algorithm>
#include <optional>
#include <variant>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "detail/text.hpp"
#include "onto/error.hpp"
#include "onto/vocab.hpp"

namespace onto {

// ---- subset parser -------------------------------------------------------------

namespace {

struct Token {
    enum class Kind { word, var, iri, punct, number, end };
    Kind kind;
    std::string text;
};

class Tokenizer {
public:
    explicit Tokenizer(std::string_view text) : text_(text) {}

    Token next() {
        skip_ws();
        if (pos_ >= text_.size()) return {Token::Kind::end, ""};
        char c = text_[pos_];
        if (c == '?' || c == '$') {
            ++pos_;
            std::string name;
            while (pos_ < text_.size() && (detail::is_ascii_alnum(text_[pos_]) ||
                                           text_[pos_] == '_'))
                name += text_[pos_++];
            if (name.empty()) fail("empty variable name");
            return {Token::Kind::var, name};
        }
        if (c == '<') {
            ++pos_;
            std::string iri;
            while (pos_ < text_.size() && text_[pos_] != '>') iri += text_[pos_++];
            if (pos_ >= text_.size()) fail("unterminated IRI");
            ++pos_;
            return {Token::Kind::iri, iri};
        }
        if (c == '{' || c == '}' || c == '(' || c == ')' || c == '*' || c == '.') {
            ++pos_;
            return {Token::Kind::punct, std::string(1, c)};
        }
        if (detail::is_ascii_digit(c)) {
            std::string num;
            while (pos_ < text_.size() && detail::is_ascii_digit(text_[pos_]))
                num += text_[pos_++];
            return {Token::Kind::number, num};
        }
        if (detail::is_ascii_alpha(c)) {
            std::string word;
            while (pos_ < text_.size() &&
                   (detail::is_ascii_alnum(text_[pos_]) || text_[pos_] == '_'))
                word += text_[pos_++];
            return {Token::Kind::word, word};
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw Error(Errc::endpoint_error, "unsupported SPARQL query: " + message);
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() &&
               (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                text_[pos_] == '\r'))
            ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

// A pattern slot: a variable name or a fixed term.
using Slot = std::variant<std::string, Term>;

struct SubsetQuery {
    bool distinct = false;
    std::vector<std::string> projected;  // plain variables, in order
    struct Count {
        bool distinct = false;
        std::optional<std::string> var;  // COUNT(*) when absent
        std::string alias;
    };
    std::optional<Count> count;
    std::optional<std::string> group_by;
    std::optional<std::string> values_var;
    std::vector<std::string> values_iris;
    Slot graph = std::string("g");
    Slot subject = std::string("s");
    Slot predicate = std::string("p");
    Slot object = std::string("o");
    std::optional<std::string> order_by;
    std::optional<long> limit;
    std::optional<long> offset;
};

class SubsetParser {
public:
    explicit SubsetParser(const std::string& text) : tok_(text) { advance(); }

    SubsetQuery parse() {
        SubsetQuery q;
        expect_word("SELECT");
        if (word_is("DISTINCT")) {
            q.distinct = true;
            advance();
        }
        // Projection: variables and at most one (COUNT(...) AS ?alias).
        while (true) {
            if (cur_.kind == Token::Kind::var) {
                q.projected.push_back(cur_.text);
                advance();
            } else if (cur_.kind == Token::Kind::punct && cur_.text == "(") {
                advance();
                expect_word("COUNT");
                expect_punct("(");
                SubsetQuery::Count count;
                if (cur_.kind == Token::Kind::punct && cur_.text == "*") {
                    advance();
                } else {
                    if (word_is("DISTINCT")) {
                        count.distinct = true;
                        advance();
                    }
                    if (cur_.kind != Token::Kind::var) tok_.fail("expected variable in COUNT");
                    count.var = cur_.text;
                    advance();
                }
                expect_punct(")");
                expect_word("AS");
                if (cur_.kind != Token::Kind::var) tok_.fail("expected alias variable");
                count.alias = cur_.text;
                advance();
                expect_punct(")");
                q.count = std::move(count);
            } else {
                break;
            }
        }
        if (q.projected.empty() && !q.count) tok_.fail("empty projection");

        expect_word("WHERE");
        expect_punct("{");
        if (word_is("VALUES")) {
            advance();
            if (cur_.kind != Token::Kind::var) tok_.fail("expected variable after VALUES");
            q.values_var = cur_.text;
            advance();
            expect_punct("{");
            while (cur_.kind == Token::Kind::iri) {
                q.values_iris.push_back(cur_.text);
                advance();
            }
            expect_punct("}");
        }
        expect_word("GRAPH");
        q.graph = parse_slot(/*allow_keyword_a=*/false);
        expect_punct("{");
        q.subject = parse_slot(false);
        q.predicate = parse_slot(true);
        q.object = parse_slot(false);
        if (cur_.kind == Token::Kind::punct && cur_.text == ".") advance();
        expect_punct("}");
        expect_punct("}");

        while (cur_.kind == Token::Kind::word) {
            if (word_is("GROUP")) {
                advance();
                expect_word("BY");
                if (cur_.kind != Token::Kind::var) tok_.fail("expected GROUP BY variable");
                q.group_by = cur_.text;
                advance();
            } else if (word_is("ORDER")) {
                advance();
                expect_word("BY");
                if (word_is("ASC")) {
                    advance();
                    expect_punct("(");
                    if (cur_.kind != Token::Kind::var) tok_.fail("expected ORDER BY variable");
                    q.order_by = cur_.text;
                    advance();
                    expect_punct(")");
                } else {
                    if (cur_.kind != Token::Kind::var) tok_.fail("expected ORDER BY variable");
                    q.order_by = cur_.text;
                    advance();
                }
            } else if (word_is("LIMIT")) {
                advance();
                q.limit = take_number();
            } else if (word_is("OFFSET")) {
                advance();
                q.offset = take_number();
            } else {
                tok_.fail("unexpected keyword '" + cur_.text + "'");
            }
        }
        if (cur_.kind != Token::Kind::end) tok_.fail("trailing content");
        return q;
    }

private:
    void advance() { cur_ = tok_.next(); }

    bool word_is(std::string_view w) const {
        return cur_.kind == Token::Kind::word &&
               detail::ascii_lower_copy(cur_.text) == detail::ascii_lower_copy(w);
    }

    void expect_word(std::string_view w) {
        if (!word_is(w)) tok_.fail("expected keyword " + std::string(w));
        advance();
    }

    void expect_punct(std::string_view p) {
        if (cur_.kind != Token::Kind::punct || cur_.text != p)
            tok_.fail("expected '" + std::string(p) + "'");
        advance();
    }

    long take_number() {
        if (cur_.kind != Token::Kind::number) tok_.fail("expected number");
        long v = std::stol(cur_.text);
        advance();
        return v;
    }

    Slot parse_slot(bool allow_keyword_a) {
        if (cur_.kind == Token::Kind::var) {
            std::string name = cur_.text;
            advance();
            return name;
        }
        if (cur_.kind == Token::Kind::iri) {
            Term t = Term::iri(cur_.text);
            advance();
            return t;
        }
        if (allow_keyword_a && cur_.kind == Token::Kind::word && cur_.text == "a") {
            advance();
            return Term::iri(std::string(vocab::rdf_type));
        }
        tok_.fail("expected variable or IRI");
    }

    Tokenizer tok_;
    Token cur_{Token::Kind::end, ""};
};

}  // namespace

SparqlResults evaluate_sparql_subset(const QuadStore& store, const std::string& query) {
    SubsetQuery q = SubsetParser(query).parse();

    // Candidate graphs.
    std::vector<Term> graphs;
    if (std::holds_alternative<Term>(q.graph)) {
        graphs.push_back(std::get<Term>(q.graph));
    } else if (q.values_var && *q.values_var == std::get<std::string>(q.graph)) {
        for (const auto& g : q.values_iris) graphs.push_back(Term::iri(g));
    } else {
        graphs = store.list_graphs();
    }

    auto slot_term = [](const Slot& s) -> std::optional<Term> {
        if (std::holds_alternative<Term>(s)) return std::get<Term>(s);
        return std::nullopt;
    };
    auto slot_var = [](const Slot& s) -> std::optional<std::string> {
        if (std::holds_alternative<std::string>(s)) return std::get<std::string>(s);
        return std::nullopt;
    };

    std::vector<SparqlRow> rows;
    for (const auto& graph : graphs) {
        QuadPattern pattern;
        pattern.graph = graph;
        pattern.subject = slot_term(q.subject);
        pattern.predicate = slot_term(q.predicate);
        pattern.object = slot_term(q.object);
        for (const auto& quad : store.match(pattern)) {
            SparqlRow row;
            bool ok = true;
            auto bind = [&row, &ok](const std::optional<std::string>& var, const Term& value) {
                if (!var) return;
                auto it = row.find(*var);
                if (it == row.end())
                    row.emplace(*var, value);
                else if (it->second != value)
                    ok = false;  // repeated variable must unify
            };
            bind(slot_var(q.graph), *quad.graph);
            bind(slot_var(q.subject), quad.triple.subject);
            bind(slot_var(q.predicate), quad.triple.predicate);
            bind(slot_var(q.object), quad.triple.object);
            if (ok) rows.push_back(std::move(row));
        }
    }

    SparqlResults out;
    if (q.count) {
        if (!q.group_by) throw Error(Errc::endpoint_error, "COUNT requires GROUP BY here");
        std::map<Term, std::set<Term>> distinct_values;
        std::map<Term, long> counters;
        for (const auto& row : rows) {
            auto key_it = row.find(*q.group_by);
            if (key_it == row.end()) continue;
            if (q.count->var) {
                auto v = row.find(*q.count->var);
                if (v == row.end()) continue;
                if (q.count->distinct)
                    distinct_values[key_it->second].insert(v->second);
                else
                    ++counters[key_it->second];
            } else {
                ++counters[key_it->second];
            }
        }
        if (q.count->var && q.count->distinct) {
            for (const auto& [key, values] : distinct_values)
                counters[key] = static_cast<long>(values.size());
        }
        for (const auto& var : q.projected) out.vars.push_back(var);
        out.vars.push_back(q.count->alias);
        for (const auto& [key, n] : counters) {
            SparqlRow row;
            row.emplace(*q.group_by, key);
            row.emplace(q.count->alias,
                        Term::literal(std::to_string(n), std::string(vocab::xsd_integer)));
            out.rows.push_back(std::move(row));
        }
    } else {
        out.vars = q.projected;
        for (auto& row : rows) {
            SparqlRow projected;
            for (const auto& var : q.projected) {
                auto it = row.find(var);
                if (it != row.end()) projected.emplace(var, it->second);
            }
            out.rows.push_back(std::move(projected));
        }
        if (q.distinct) {
            std::sort(out.rows.begin(), out.rows.end());
            out.rows.erase(std::unique(out.rows.begin(), out.rows.end()), out.rows.end());
        }
    }

    // Deterministic ordering: the ORDER BY variable first, whole row as
    // tie-break.
    std::sort(out.rows.begin(), out.rows.end(), [&q](const SparqlRow& a, const SparqlRow& b) {
        if (q.order_by) {
            auto ia = a.find(*q.order_by), ib = b.find(*q.order_by);
            bool ha = ia != a.end(), hb = ib != b.end();
            if (ha != hb) return hb;  // unbound sorts first
            if (ha && hb && ia->second != ib->second) return ia->second < ib->second;
        }
        return a < b;
    });

    long offset = q.offset.value_or(0);
    if (offset > 0) {
        if (offset >= static_cast<long>(out.rows.size()))
            out.rows.clear();
        else
            out.rows.erase(out.rows.begin(), out.rows.begin() + offset);
    }
    if (q.limit && static_cast<long>(out.rows.size()) > *q.limit)
        out.rows.resize(static_cast<std::size_t>(*q.limit));
    return out;
}

SparqlResults LocalSparqlClient::select(const std::string& query) {
    return evaluate_sparql_subset(*store_, query);
}

// ---- results JSON codec ------------------------------------------------------------

std::string sparql_results_to_json(const SparqlResults& results) {
    nlohmann::json j;
    j["head"]["vars"] = results.vars;
    auto bindings = nlohmann::json::array();
    for (const auto& row : results.rows) {
        nlohmann::json b = nlohmann::json::object();
        for (const auto& [var, term] : row) {
            nlohmann::json t;
            switch (term.kind()) {
                case TermKind::iri:
                    t["type"] = "uri";
                    t["value"] = term.value();
                    break;
                case TermKind::blank:
                    t["type"] = "bnode";
                    t["value"] = term.value();
                    break;
                case TermKind::literal:
                    t["type"] = "literal";
                    t["value"] = term.value();
                    if (term.has_language())
                        t["xml:lang"] = term.language();
                    else if (term.datatype() != vocab::xsd_string)
                        t["datatype"] = term.datatype();
                    break;
            }
            b[var] = std::move(t);
        }
        bindings.push_back(std::move(b));
    }
    j["results"]["bindings"] = std::move(bindings);
    return j.dump();
}

SparqlResults sparql_results_from_json(const std::string& body) {
    nlohmann::json j = nlohmann::json::parse(body, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.contains("results") || !j["results"].contains("bindings"))
        throw Error(Errc::endpoint_error, "malformed SPARQL results document");
    SparqlResults out;
    if (j.contains("head") && j["head"].contains("vars")) {
        for (const auto& v : j["head"]["vars"]) out.vars.push_back(v.get<std::string>());
    }
    for (const auto& binding : j["results"]["bindings"]) {
        SparqlRow row;
        for (auto it = binding.begin(); it != binding.end(); ++it) {
            const auto& t = it.value();
            if (!t.contains("type") || !t.contains("value"))
                throw Error(Errc::endpoint_error, "malformed SPARQL result binding");
            std::string type = t["type"].get<std::string>();
            std::string value = t["value"].get<std::string>();
            if (type == "uri") {
                row.emplace(it.key(), Term::iri(value));
            } else if (type == "bnode") {
                row.emplace(it.key(), Term::blank(value));
            } else if (type == "literal" || type == "typed-literal") {
                if (t.contains("xml:lang"))
                    row.emplace(it.key(),
                                Term::lang_literal(value, t["xml:lang"].get<std::string>()));
                else if (t.contains("datatype"))
                    row.emplace(it.key(),
                                Term::literal(value, t["datatype"].get<std::string>()));
                else
                    row.emplace(it.key(), Term::literal(value));
            } else {
                throw Error(Errc::endpoint_error, "unknown binding type '" + type + "'");
            }
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

// ---- HTTP client ----------------------------------------------------------------------

namespace {

struct SplitUrl {
    std::string origin;  // scheme://host[:port]
    std::string path;    // /sparql...
};

SplitUrl split_url(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw Error(Errc::malformed_request, "endpoint URL must be http(s): '" + url + "'");
    auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

HttpSparqlClient::HttpSparqlClient(std::string endpoint_url, std::chrono::milliseconds timeout)
    : endpoint_url_(std::move(endpoint_url)), timeout_(timeout) {}

SparqlResults HttpSparqlClient::select(const std::string& query) {
    auto [origin, path] = split_url(endpoint_url_);
    httplib::Client client(origin);
    auto seconds = std::max<long>(1, timeout_.count() / 1000);
    auto micros = (timeout_.count() % 1000) * 1000;
    client.set_connection_timeout(seconds, micros);
    client.set_read_timeout(seconds, micros);
    client.set_write_timeout(seconds, micros);

    httplib::Headers headers = {{"Accept", "application/sparql-results+json"}};
    auto started = std::chrono::steady_clock::now();
    auto result = client.Post(path, headers, "query=" + detail::url_encode(query),
                              "application/x-www-form-urlencoded");

    // Some deployments accept only GET.
    if (result && (result->status == 405 || result->status == 501)) {
        result = client.Get(path + "?query=" + detail::url_encode(query), headers);
    }

    if (!result) {
        auto elapsed = std::chrono::steady_clock::now() - started;
        bool timed_out = result.error() == httplib::Error::ConnectionTimeout ||
                         ((result.error() == httplib::Error::Read ||
                           result.error() == httplib::Error::Write) &&
                          elapsed >= timeout_);
        if (timed_out)
            throw Error(Errc::timeout, "endpoint " + endpoint_url_ + " timed out");
        throw Error(Errc::network_error, "cannot reach endpoint " + endpoint_url_ + ": " +
                                             httplib::to_string(result.error()));
    }
    if (result->status < 200 || result->status >= 300)
        throw Error(Errc::endpoint_error, "endpoint " + endpoint_url_ + " answered HTTP " +
                                              std::to_string(result->status));
    return sparql_results_from_json(result->body);
}

}  // namespace onto
