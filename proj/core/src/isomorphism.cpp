#include "onto/isomorphism.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "onto/term.hpp"

namespace onto {

namespace {

bool has_blank(const Triple& t) { return t.subject.is_blank() || t.object.is_blank(); }

void split_by_blanks(const Graph& g, std::set<Triple>& ground, std::set<Triple>& blank) {
    for (const auto& t : g) {
        (has_blank(t) ? blank : ground).insert(t);
    }
}

std::vector<std::string> blank_labels(const std::set<Triple>& triples) {
    std::set<std::string> labels;
    for (const auto& t : triples) {
        if (t.subject.is_blank()) labels.insert(t.subject.value());
        if (t.object.is_blank()) labels.insert(t.object.value());
    }
    return {labels.begin(), labels.end()};
}

// Label-independent description of a blank node's incident triples, used to
// prune the bijection search.
std::vector<std::string> blank_signature(const std::string& label, const std::set<Triple>& triples) {
    std::vector<std::string> sig;
    for (const auto& t : triples) {
        bool as_subject = t.subject.is_blank() && t.subject.value() == label;
        bool as_object = t.object.is_blank() && t.object.value() == label;
        if (!as_subject && !as_object) continue;
        std::string entry;
        entry += as_subject ? (as_object ? "so|" : "s|") : "o|";
        entry += to_ntriples(t.predicate);
        entry += '|';
        const Term& other = as_subject ? t.object : t.subject;
        entry += other.is_blank() ? std::string("_") : to_ntriples(other);
        sig.push_back(std::move(entry));
    }
    std::sort(sig.begin(), sig.end());
    return sig;
}

Triple apply_mapping(const Triple& t, const std::map<std::string, std::string>& m) {
    Triple out = t;
    if (out.subject.is_blank()) {
        if (auto it = m.find(out.subject.value()); it != m.end())
            out.subject = Term::blank(it->second);
    }
    if (out.object.is_blank()) {
        if (auto it = m.find(out.object.value()); it != m.end())
            out.object = Term::blank(it->second);
    }
    return out;
}

bool triple_fully_mapped(const Triple& t, const std::map<std::string, std::string>& m) {
    if (t.subject.is_blank() && !m.count(t.subject.value())) return false;
    if (t.object.is_blank() && !m.count(t.object.value())) return false;
    return true;
}

bool extend_mapping(std::size_t index, const std::vector<std::string>& labels_a,
                    const std::vector<std::vector<std::string>>& candidates,
                    std::map<std::string, std::string>& mapping, std::set<std::string>& used,
                    const std::set<Triple>& blank_a, const std::set<Triple>& blank_b) {
    if (index == labels_a.size()) return true;
    const std::string& la = labels_a[index];
    for (const std::string& lb : candidates[index]) {
        if (used.count(lb)) continue;
        mapping[la] = lb;
        used.insert(lb);
        bool consistent = true;
        for (const auto& t : blank_a) {
            bool involves = (t.subject.is_blank() && t.subject.value() == la) ||
                            (t.object.is_blank() && t.object.value() == la);
            if (!involves || !triple_fully_mapped(t, mapping)) continue;
            if (!blank_b.count(apply_mapping(t, mapping))) {
                consistent = false;
                break;
            }
        }
        if (consistent &&
            extend_mapping(index + 1, labels_a, candidates, mapping, used, blank_a, blank_b))
            return true;
        mapping.erase(la);
        used.erase(lb);
    }
    return false;
}

}  // namespace

bool graph_equal_ground(const Graph& a, const Graph& b) {
    std::set<Triple> ground_a, blank_a, ground_b, blank_b;
    split_by_blanks(a, ground_a, blank_a);
    split_by_blanks(b, ground_b, blank_b);

    if (ground_a != ground_b) return false;
    if (blank_a.size() != blank_b.size()) return false;
    if (blank_a.empty()) return true;

    auto labels_a = blank_labels(blank_a);
    auto labels_b = blank_labels(blank_b);
    if (labels_a.size() != labels_b.size()) return false;

    std::map<std::vector<std::string>, std::vector<std::string>> by_sig_b;
    for (const auto& lb : labels_b) by_sig_b[blank_signature(lb, blank_b)].push_back(lb);

    std::vector<std::vector<std::string>> candidates;
    candidates.reserve(labels_a.size());
    for (const auto& la : labels_a) {
        auto it = by_sig_b.find(blank_signature(la, blank_a));
        if (it == by_sig_b.end()) return false;
        candidates.push_back(it->second);
    }

    std::map<std::string, std::string> mapping;
    std::set<std::string> used;
    return extend_mapping(0, labels_a, candidates, mapping, used, blank_a, blank_b);
}

namespace {

std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 1469598103934665603ull) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    a ^= b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2);
    return a;
}

}  // namespace

Graph canonical_blank_labels(const Graph& g) {
    std::set<std::string> label_set;
    for (const auto& t : g) {
        if (t.subject.is_blank()) label_set.insert(t.subject.value());
        if (t.object.is_blank()) label_set.insert(t.object.value());
    }
    if (label_set.empty()) return g;

    std::vector<std::string> labels(label_set.begin(), label_set.end());
    std::unordered_map<std::string, std::uint64_t> color;
    for (const auto& l : labels) color[l] = fnv1a("blank");

    // Refine until the partition induced by the colors stops changing.
    auto partition_of = [&]() {
        std::map<std::uint64_t, std::set<std::string>> p;
        for (const auto& l : labels) p[color[l]].insert(l);
        std::vector<std::set<std::string>> groups;
        for (auto& [c, members] : p) groups.push_back(members);
        std::sort(groups.begin(), groups.end());
        return groups;
    };

    auto previous = partition_of();
    for (std::size_t round = 0; round < labels.size(); ++round) {
        std::unordered_map<std::string, std::uint64_t> next;
        for (const auto& l : labels) {
            std::vector<std::uint64_t> incident;
            for (const auto& t : g) {
                bool as_subject = t.subject.is_blank() && t.subject.value() == l;
                bool as_object = t.object.is_blank() && t.object.value() == l;
                if (!as_subject && !as_object) continue;
                std::uint64_t h = fnv1a(as_subject ? (as_object ? "so" : "s") : "o");
                h = mix(h, fnv1a(to_ntriples(t.predicate)));
                const Term& other = as_subject ? t.object : t.subject;
                h = mix(h, other.is_blank() ? color[other.value()] : fnv1a(to_ntriples(other)));
                incident.push_back(h);
            }
            std::sort(incident.begin(), incident.end());
            std::uint64_t h = color[l];
            for (auto v : incident) h = mix(h, v);
            next[l] = h;
        }
        color = std::move(next);
        auto current = partition_of();
        if (current == previous) break;
        previous = std::move(current);
    }

    // Stable assignment: colors first, original label as tie-break. Labels are
    // zero-padded so that lexicographic order equals assignment order, which
    // makes the relabeling a fixed point.
    std::sort(labels.begin(), labels.end(), [&](const std::string& x, const std::string& y) {
        if (color[x] != color[y]) return color[x] < color[y];
        return x < y;
    });
    int width = 1;
    for (std::size_t n = labels.size() - 1; n >= 10; n /= 10) ++width;
    std::map<std::string, std::string> rename;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        std::string idx = std::to_string(i);
        rename[labels[i]] = "b" + std::string(width - idx.size(), '0') + idx;
    }

    Graph out;
    out.set_prefixes(g.prefixes());
    for (const auto& t : g) {
        Triple nt = t;
        if (nt.subject.is_blank()) nt.subject = Term::blank(rename[nt.subject.value()]);
        if (nt.object.is_blank()) nt.object = Term::blank(rename[nt.object.value()]);
        out.insert(nt);
    }
    return out;
}

}  // namespace onto
