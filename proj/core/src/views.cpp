#include "onto/views.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "detail/text.hpp"
#include "onto/vocab.hpp"

namespace onto {

namespace {

Term iri(std::string_view s) { return Term::iri(std::string(s)); }

std::optional<std::string> comment_of(const Graph& g, const Term& subject) {
    for (const auto& o : objects_of(g, subject, vocab::rdfs_comment)) {
        if (o.is_literal()) return o.value();
    }
    return std::nullopt;
}

std::optional<std::string> first_iri_object(const Graph& g, const Term& subject,
                                            std::string_view predicate) {
    for (const auto& o : objects_of(g, subject, predicate)) {
        if (o.is_iri()) return o.value();
    }
    return std::nullopt;
}

}  // namespace

ListViewDocument list_view(const Graph& g) {
    ListViewDocument doc;
    SchemaTerms terms = extract_schema_terms(g);

    for (const auto& c : terms.classes) {
        ListViewClass cls;
        cls.iri = c;
        cls.label = label_of(g, iri(c));
        cls.comment = comment_of(g, iri(c));
        for (const auto& o : objects_of(g, iri(c), vocab::rdfs_sub_class_of)) {
            if (o.is_iri()) cls.super_classes.push_back(o.value());
        }
        for (const auto& entry : declared_properties(g, c))
            cls.property_iris.push_back(entry.property_iri);
        doc.classes.push_back(std::move(cls));
    }

    for (const auto& p : terms.properties) {
        if (terms.classes.count(p)) continue;  // dual terms are listed as classes
        ListViewProperty prop;
        prop.iri = p;
        prop.kind = property_kind(g, p);
        prop.label = label_of(g, iri(p));
        prop.comment = comment_of(g, iri(p));
        prop.sub_property_of = first_iri_object(g, iri(p), vocab::rdfs_sub_property_of);
        prop.domain = first_iri_object(g, iri(p), vocab::rdfs_domain);
        prop.range = first_iri_object(g, iri(p), vocab::rdfs_range);
        if (!prop.domain) doc.no_domain_properties.push_back(p);
        doc.properties.push_back(std::move(prop));
    }
    // terms.classes / terms.properties are ordered sets, so both indices are
    // already sorted by IRI.
    return doc;
}

namespace {

nlohmann::json opt_str(const std::optional<std::string>& s) {
    return s ? nlohmann::json(*s) : nlohmann::json(nullptr);
}

}  // namespace

std::string list_view_json(const ListViewDocument& doc) {
    nlohmann::json j;
    auto classes = nlohmann::json::array();
    for (const auto& c : doc.classes) {
        nlohmann::json jc;
        jc["iri"] = c.iri;
        jc["label"] = opt_str(c.label);
        jc["comment"] = opt_str(c.comment);
        jc["superClasses"] = c.super_classes;
        jc["properties"] = c.property_iris;
        classes.push_back(std::move(jc));
    }
    auto properties = nlohmann::json::array();
    for (const auto& p : doc.properties) {
        nlohmann::json jp;
        jp["iri"] = p.iri;
        jp["kind"] = property_kind_name(p.kind);
        jp["label"] = opt_str(p.label);
        jp["comment"] = opt_str(p.comment);
        jp["subPropertyOf"] = opt_str(p.sub_property_of);
        jp["domain"] = opt_str(p.domain);
        jp["range"] = opt_str(p.range);
        properties.push_back(std::move(jp));
    }
    j["classes"] = std::move(classes);
    j["properties"] = std::move(properties);
    j["noDomainProperties"] = doc.no_domain_properties;
    return j.dump(2) + "\n";
}

std::string list_view_html(const ListViewDocument& doc) {
    using detail::escape_html;
    std::ostringstream out;
    out << "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n"
        << "<title>Ontology list view</title>\n</head>\n<body>\n";

    out << "<h1>Classes</h1>\n<ul class=\"index\">\n";
    for (const auto& c : doc.classes)
        out << "  <li><a href=\"#" << escape_html(c.iri) << "\">" << escape_html(c.iri)
            << "</a></li>\n";
    out << "</ul>\n<h1>Properties</h1>\n<ul class=\"index\">\n";
    for (const auto& p : doc.properties)
        out << "  <li><a href=\"#" << escape_html(p.iri) << "\">" << escape_html(p.iri)
            << "</a></li>\n";
    out << "</ul>\n";

    out << "<h1>Class details</h1>\n";
    for (const auto& c : doc.classes) {
        out << "<section id=\"" << escape_html(c.iri) << "\">\n";
        out << "  <h2>" << escape_html(c.iri) << "</h2>\n  <dl>\n";
        if (c.label) out << "    <dt>label</dt><dd>" << escape_html(*c.label) << "</dd>\n";
        if (c.comment) out << "    <dt>comment</dt><dd>" << escape_html(*c.comment) << "</dd>\n";
        for (const auto& sc : c.super_classes)
            out << "    <dt>subClassOf</dt><dd>" << escape_html(sc) << "</dd>\n";
        for (const auto& p : c.property_iris)
            out << "    <dt>property</dt><dd>" << escape_html(p) << "</dd>\n";
        out << "  </dl>\n</section>\n";
    }

    out << "<h1>Property details</h1>\n";
    for (const auto& p : doc.properties) {
        out << "<section id=\"" << escape_html(p.iri) << "\">\n";
        out << "  <h2>" << escape_html(p.iri) << "</h2>\n  <dl>\n";
        out << "    <dt>kind</dt><dd>" << property_kind_name(p.kind) << "</dd>\n";
        if (p.label) out << "    <dt>label</dt><dd>" << escape_html(*p.label) << "</dd>\n";
        if (p.comment) out << "    <dt>comment</dt><dd>" << escape_html(*p.comment) << "</dd>\n";
        if (p.sub_property_of)
            out << "    <dt>subPropertyOf</dt><dd>" << escape_html(*p.sub_property_of)
                << "</dd>\n";
        if (p.domain) out << "    <dt>domain</dt><dd>" << escape_html(*p.domain) << "</dd>\n";
        if (p.range) out << "    <dt>range</dt><dd>" << escape_html(*p.range) << "</dd>\n";
        out << "  </dl>\n</section>\n";
    }

    if (!doc.no_domain_properties.empty()) {
        out << "<h1>(no domain)</h1>\n<ul>\n";
        for (const auto& p : doc.no_domain_properties)
            out << "  <li>" << escape_html(p) << "</li>\n";
        out << "</ul>\n";
    }
    out << "</body>\n</html>\n";
    return out.str();
}

VowlDocument vowl_export(const Graph& g) {
    VowlDocument doc;
    SchemaTerms terms = extract_schema_terms(g);

    std::map<std::string, int> class_index;
    for (const auto& c : terms.classes) {
        class_index[c] = static_cast<int>(doc.classes.size());
        doc.classes.push_back({c, label_of(g, iri(c))});
    }

    std::map<std::string, int> datatype_index;
    auto datatype_node = [&](const std::string& datatype_iri) {
        auto it = datatype_index.find(datatype_iri);
        if (it != datatype_index.end()) return it->second;
        int idx = static_cast<int>(doc.datatypes.size());
        datatype_index[datatype_iri] = idx;
        doc.datatypes.push_back({datatype_iri, label_of(g, iri(datatype_iri))});
        return idx;
    };

    for (const auto& p : terms.properties) {
        PropertyKind kind = property_kind(g, p);
        auto domain = first_iri_object(g, iri(p), vocab::rdfs_domain);
        auto range = first_iri_object(g, iri(p), vocab::rdfs_range);
        if (kind == PropertyKind::object_property) {
            if (!domain || !range) continue;
            auto d = class_index.find(*domain);
            auto r = class_index.find(*range);
            if (d == class_index.end() || r == class_index.end()) continue;
            doc.properties.push_back({p, label_of(g, iri(p)), kind, d->second, r->second});
        } else if (kind == PropertyKind::datatype_property) {
            if (!domain) continue;
            auto d = class_index.find(*domain);
            if (d == class_index.end()) continue;
            std::string range_iri = range.value_or(std::string(vocab::rdfs_literal));
            doc.properties.push_back(
                {p, label_of(g, iri(p)), kind, d->second, datatype_node(range_iri)});
        }
        // Annotation and plain properties are not part of the graph view.
    }
    return doc;
}

std::string vowl_json(const VowlDocument& doc) {
    nlohmann::json j;
    auto classes = nlohmann::json::array();
    for (std::size_t i = 0; i < doc.classes.size(); ++i) {
        nlohmann::json n;
        n["id"] = i;
        n["iri"] = doc.classes[i].iri;
        n["label"] = opt_str(doc.classes[i].label);
        classes.push_back(std::move(n));
    }
    auto datatypes = nlohmann::json::array();
    for (std::size_t i = 0; i < doc.datatypes.size(); ++i) {
        nlohmann::json n;
        n["id"] = i;
        n["iri"] = doc.datatypes[i].iri;
        n["label"] = opt_str(doc.datatypes[i].label);
        datatypes.push_back(std::move(n));
    }
    auto properties = nlohmann::json::array();
    for (const auto& e : doc.properties) {
        nlohmann::json n;
        n["iri"] = e.iri;
        n["label"] = opt_str(e.label);
        n["kind"] = property_kind_name(e.kind);
        n["domain"] = e.domain;
        n["range"] = e.range;
        n["rangeKind"] =
            e.kind == PropertyKind::datatype_property ? "datatype" : "class";
        properties.push_back(std::move(n));
    }
    j["class"] = std::move(classes);
    j["datatype"] = std::move(datatypes);
    j["property"] = std::move(properties);
    return j.dump(2) + "\n";
}

}  // namespace onto
