#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "detail/text.hpp"
#include "onto/error.hpp"
#include "onto/syntax.hpp"
#include "onto/vocab.hpp"

namespace onto {

namespace {

using detail::is_ascii_alnum;
using detail::is_ascii_alpha;
using detail::is_ascii_digit;

// ---- blank node label sanitization ------------------------------------------

bool is_safe_blank_label(const std::string& label, bool ncname) {
    if (label.empty()) return false;
    char first = label[0];
    bool start_ok = is_ascii_alpha(first) || first == '_' ||
                    static_cast<unsigned char>(first) >= 0x80 ||
                    (!ncname && is_ascii_digit(first));
    if (!start_ok) return false;
    for (char c : label) {
        if (!(is_ascii_alnum(c) || c == '_' || c == '-' ||
              static_cast<unsigned char>(c) >= 0x80))
            return false;
    }
    return true;
}

// Injective relabeling of blank labels the target syntax cannot carry.
std::map<std::string, std::string> sanitize_blank_labels(const Graph& g, bool ncname) {
    std::set<std::string> labels;
    for (const auto& t : g) {
        if (t.subject.is_blank()) labels.insert(t.subject.value());
        if (t.object.is_blank()) labels.insert(t.object.value());
    }
    std::set<std::string> taken;
    for (const auto& l : labels) {
        if (is_safe_blank_label(l, ncname)) taken.insert(l);
    }
    std::map<std::string, std::string> out;
    long counter = 0;
    for (const auto& l : labels) {
        if (taken.count(l)) {
            out[l] = l;
        } else {
            std::string fresh;
            do {
                fresh = "b" + std::to_string(counter++);
            } while (taken.count(fresh));
            taken.insert(fresh);
            out[l] = fresh;
        }
    }
    return out;
}

// ---- N-Triples ----------------------------------------------------------------

std::string term_to_nt(const Term& t, const std::map<std::string, std::string>& blanks) {
    if (t.is_blank()) return "_:" + blanks.at(t.value());
    return to_ntriples(t);
}

std::string serialize_ntriples(const Graph& g) {
    auto blanks = sanitize_blank_labels(g, /*ncname=*/false);
    std::vector<std::string> lines;
    lines.reserve(g.size());
    for (const auto& t : g) {
        lines.push_back(term_to_nt(t.subject, blanks) + " " + term_to_nt(t.predicate, blanks) +
                        " " + term_to_nt(t.object, blanks) + " .");
    }
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const auto& line : lines) {
        out += line;
        out += '\n';
    }
    return out;
}

// ---- Turtle ---------------------------------------------------------------------

bool lexical_matches_integer(const std::string& s) {
    std::size_t i = (s.size() > 0 && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
        if (!is_ascii_digit(s[i])) return false;
    return true;
}

bool lexical_matches_decimal(const std::string& s) {
    std::size_t i = (s.size() > 0 && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
    auto dot = s.find('.', i);
    if (dot == std::string::npos || dot + 1 >= s.size()) return false;
    for (std::size_t k = i; k < dot; ++k)
        if (!is_ascii_digit(s[k])) return false;
    for (std::size_t k = dot + 1; k < s.size(); ++k)
        if (!is_ascii_digit(s[k])) return false;
    return true;
}

bool lexical_matches_double(const std::string& s) {
    auto e = s.find_first_of("eE");
    if (e == std::string::npos || e == 0) return false;
    std::string mantissa = s.substr(0, e);
    std::string exponent = s.substr(e + 1);
    if (!lexical_matches_integer(exponent)) return false;
    if (lexical_matches_integer(mantissa) || lexical_matches_decimal(mantissa)) return true;
    // "1." style mantissa is also allowed before an exponent
    if (!mantissa.empty() && mantissa.back() == '.')
        return lexical_matches_integer(mantissa.substr(0, mantissa.size() - 1));
    return false;
}

bool is_safe_pn_local(std::string_view local) {
    for (char c : local) {
        if (!(is_ascii_alnum(c) || c == '_' || c == '-')) return false;
    }
    return true;
}

class TurtleWriter {
public:
    explicit TurtleWriter(const Graph& g)
        : graph_(g), blanks_(sanitize_blank_labels(g, /*ncname=*/false)) {
        for (const auto& [prefix, ns] : g.prefixes()) {
            if (!ns_to_prefix_.count(ns)) ns_to_prefix_[ns] = prefix;
        }
    }

    std::string run() {
        std::ostringstream out;
        for (const auto& [prefix, ns] : graph_.prefixes()) {
            out << "@prefix " << prefix << ": <" << detail::escape_iriref(ns) << "> .\n";
        }
        if (!graph_.prefixes().empty() && !graph_.empty()) out << "\n";

        // Group by subject; within a subject group by predicate (rdf:type first).
        std::map<Term, std::map<Term, std::vector<Term>, PredicateOrder>> groups;
        for (const auto& t : graph_) {
            groups[t.subject][t.predicate].push_back(t.object);
        }
        bool first_group = true;
        for (auto& [subject, pos] : groups) {
            if (!first_group) out << "\n";
            first_group = false;
            out << render(subject);
            bool first_pred = true;
            for (auto& [predicate, objects] : pos) {
                out << (first_pred ? " " : " ;\n    ");
                first_pred = false;
                if (predicate.value() == vocab::rdf_type)
                    out << "a";
                else
                    out << render(predicate);
                std::sort(objects.begin(), objects.end());
                for (std::size_t i = 0; i < objects.size(); ++i) {
                    out << (i == 0 ? " " : ", ") << render(objects[i]);
                }
            }
            out << " .\n";
        }
        return out.str();
    }

private:
    struct PredicateOrder {
        bool operator()(const Term& a, const Term& b) const {
            bool a_type = a.value() == vocab::rdf_type;
            bool b_type = b.value() == vocab::rdf_type;
            if (a_type != b_type) return a_type;
            return a < b;
        }
    };

    std::string render_iri(const std::string& iri) const {
        // Longest declared namespace that leaves a safe local part wins.
        std::string best_prefix;
        std::string best_local;
        std::size_t best_len = 0;
        for (const auto& [ns, prefix] : ns_to_prefix_) {
            if (ns.empty() || ns.size() < best_len || iri.size() < ns.size()) continue;
            if (iri.compare(0, ns.size(), ns) != 0) continue;
            std::string_view local = std::string_view(iri).substr(ns.size());
            if (!is_safe_pn_local(local)) continue;
            best_len = ns.size();
            best_prefix = prefix;
            best_local = std::string(local);
        }
        if (best_len > 0) return best_prefix + ":" + best_local;
        return "<" + detail::escape_iriref(iri) + ">";
    }

    std::string render(const Term& t) const {
        switch (t.kind()) {
            case TermKind::iri: return render_iri(t.value());
            case TermKind::blank: return "_:" + blanks_.at(t.value());
            case TermKind::literal: break;
        }
        const std::string& dt = t.datatype();
        if (!t.has_language()) {
            if (dt == vocab::xsd_integer && lexical_matches_integer(t.value())) return t.value();
            if (dt == vocab::xsd_decimal && lexical_matches_decimal(t.value())) return t.value();
            if (dt == vocab::xsd_double && lexical_matches_double(t.value())) return t.value();
            if (dt == vocab::xsd_boolean && (t.value() == "true" || t.value() == "false"))
                return t.value();
        }
        std::string out = "\"" + detail::escape_string_literal(t.value()) + "\"";
        if (t.has_language())
            out += "@" + t.language();
        else if (dt != vocab::xsd_string)
            out += "^^" + render_iri(dt);
        return out;
    }

    const Graph& graph_;
    std::map<std::string, std::string> blanks_;
    std::map<std::string, std::string> ns_to_prefix_;
};

// ---- RDF/XML ---------------------------------------------------------------------

bool is_ncname_start(unsigned char c) {
    return is_ascii_alpha(static_cast<char>(c)) || c == '_' || c >= 0x80;
}

bool is_ncname_char(unsigned char c) {
    return is_ncname_start(c) || is_ascii_digit(static_cast<char>(c)) || c == '-' || c == '.';
}

// Splits an IRI into (namespace, XML local name); the local name is the
// longest NCName suffix.
std::pair<std::string, std::string> split_for_xml(const std::string& iri) {
    std::size_t i = iri.size();
    while (i > 0 && is_ncname_char(static_cast<unsigned char>(iri[i - 1]))) --i;
    while (i < iri.size() && !is_ncname_start(static_cast<unsigned char>(iri[i]))) ++i;
    if (i == iri.size())
        throw Error(Errc::rdfxml_unencodable,
                    "predicate IRI cannot be split into namespace and XML name: <" + iri + ">");
    return {iri.substr(0, i), iri.substr(i)};
}

std::string serialize_rdfxml(const Graph& g) {
    auto blanks = sanitize_blank_labels(g, /*ncname=*/true);

    std::map<std::string, std::string> ns_prefix;  // namespace -> xml prefix
    ns_prefix[std::string(vocab::rdf_ns)] = "rdf";
    auto well_known = [](std::string_view ns) -> const char* {
        if (ns == vocab::rdfs_ns) return "rdfs";
        if (ns == vocab::owl_ns) return "owl";
        if (ns == vocab::xsd_ns) return "xsd";
        if (ns == vocab::dc_ns) return "dc";
        if (ns == vocab::cc_ns) return "cc";
        return nullptr;
    };

    struct PredParts {
        std::string ns, local;
    };
    std::map<std::string, PredParts> pred_split;
    for (const auto& t : g) {
        if (pred_split.count(t.predicate.value())) continue;
        auto [ns, local] = split_for_xml(t.predicate.value());
        pred_split[t.predicate.value()] = {ns, local};
    }
    int counter = 0;
    for (const auto& [iri, parts] : pred_split) {
        if (ns_prefix.count(parts.ns)) continue;
        if (const char* wk = well_known(parts.ns)) {
            ns_prefix[parts.ns] = wk;
        } else {
            ns_prefix[parts.ns] = "ns" + std::to_string(counter++);
        }
    }

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<rdf:RDF";
    for (const auto& [ns, prefix] : ns_prefix) {
        out << "\n    xmlns:" << prefix << "=\"" << detail::escape_xml(ns) << "\"";
    }
    out << ">\n";

    std::map<Term, std::vector<Triple>> by_subject;
    for (const auto& t : g) by_subject[t.subject].push_back(t);
    for (auto& [subject, triples] : by_subject) {
        out << "  <rdf:Description ";
        if (subject.is_blank())
            out << "rdf:nodeID=\"" << blanks.at(subject.value()) << "\"";
        else
            out << "rdf:about=\"" << detail::escape_xml(subject.value()) << "\"";
        out << ">\n";
        std::sort(triples.begin(), triples.end());
        for (const auto& t : triples) {
            const auto& parts = pred_split.at(t.predicate.value());
            std::string tag = ns_prefix.at(parts.ns) + ":" + parts.local;
            out << "    <" << tag;
            const Term& o = t.object;
            if (o.is_iri()) {
                out << " rdf:resource=\"" << detail::escape_xml(o.value()) << "\"/>\n";
            } else if (o.is_blank()) {
                out << " rdf:nodeID=\"" << blanks.at(o.value()) << "\"/>\n";
            } else {
                if (o.has_language())
                    out << " xml:lang=\"" << detail::escape_xml(o.language()) << "\"";
                else if (o.datatype() != vocab::xsd_string)
                    out << " rdf:datatype=\"" << detail::escape_xml(o.datatype()) << "\"";
                out << ">" << detail::escape_xml(o.value()) << "</" << tag << ">\n";
            }
        }
        out << "  </rdf:Description>\n";
    }
    out << "</rdf:RDF>\n";
    return out.str();
}

// ---- RDF/JSON ----------------------------------------------------------------------
// Subject -> predicate -> array of value objects, after the RDF 1.1 JSON
// Alternate Serialization. Blank nodes are keyed as "_:label".

std::string serialize_rdfjson(const Graph& g) {
    auto blanks = sanitize_blank_labels(g, /*ncname=*/false);
    nlohmann::json doc = nlohmann::json::object();
    std::map<Term, std::map<Term, std::vector<Term>>> groups;
    for (const auto& t : g) groups[t.subject][t.predicate].push_back(t.object);
    for (auto& [subject, pos] : groups) {
        std::string skey =
            subject.is_blank() ? "_:" + blanks.at(subject.value()) : subject.value();
        nlohmann::json pmap = nlohmann::json::object();
        for (auto& [predicate, objects] : pos) {
            std::sort(objects.begin(), objects.end());
            nlohmann::json values = nlohmann::json::array();
            for (const auto& o : objects) {
                nlohmann::json v;
                if (o.is_iri()) {
                    v["type"] = "uri";
                    v["value"] = o.value();
                } else if (o.is_blank()) {
                    v["type"] = "bnode";
                    v["value"] = "_:" + blanks.at(o.value());
                } else {
                    v["type"] = "literal";
                    v["value"] = o.value();
                    if (o.has_language())
                        v["lang"] = o.language();
                    else if (o.datatype() != vocab::xsd_string)
                        v["datatype"] = o.datatype();
                }
                values.push_back(std::move(v));
            }
            pmap[predicate.value()] = std::move(values);
        }
        doc[skey] = std::move(pmap);
    }
    return doc.dump(2) + "\n";
}

}  // namespace

std::string serialize(const Graph& g, SyntaxFormat format) {
    switch (format) {
        case SyntaxFormat::turtle: return TurtleWriter(g).run();
        case SyntaxFormat::ntriples: return serialize_ntriples(g);
        case SyntaxFormat::rdfxml: return serialize_rdfxml(g);
        case SyntaxFormat::rdfjson: return serialize_rdfjson(g);
    }
    throw Error(Errc::unsupported_format, "unknown format");
}

}  // namespace onto
