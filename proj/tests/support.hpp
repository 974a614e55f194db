#pragma once

// Test-only helpers: a brute-force evaluation oracle working on plain cell
// lists, random alignment generators, and an independent alignment writer.

#include <algorithm>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "aligndash/alignment.hpp"
#include "aligndash/eval.hpp"

namespace testsupport {

using aligndash::Alignment;
using aligndash::Correspondence;
using aligndash::EvalOutcome;
using aligndash::GoldStandardCompleteness;
using aligndash::Relation;
using aligndash::RelationKind;

// ---- oracle -----------------------------------------------------------------

using Key = std::tuple<std::string, std::string, int>;

inline Key key(const Correspondence& c) { return {c.source, c.target, static_cast<int>(c.relation.kind())}; }

/// Dedup by linear search, keeping the max confidence and the first cell on ties.
inline std::vector<Correspondence> dedup(const std::vector<Correspondence>& cells) {
    std::vector<Correspondence> out;
    for (const auto& c : cells) {
        auto it = std::find_if(out.begin(), out.end(), [&](const Correspondence& o) { return key(o) == key(c); });
        if (it == out.end()) {
            out.push_back(c);
        } else if (c.confidence > it->confidence) {
            *it = c;
        }
    }
    return out;
}

struct OracleRow {
    Key key;
    EvalOutcome outcome;
    double confidence;
    friend auto operator<=>(const OracleRow& a, const OracleRow& b) {
        return std::tie(a.key, a.outcome) <=> std::tie(b.key, b.outcome);
    }
    friend bool operator==(const OracleRow& a, const OracleRow& b) {
        return a.key == b.key && a.outcome == b.outcome && a.confidence == b.confidence;
    }
};

/// TP = S ∩ R, FP = S \ R, FN = R \ S on key sets, with the partial rule
/// dropping FP cells whose source and target both occur nowhere in R.
inline std::vector<OracleRow> oracle_classify(const std::vector<Correspondence>& system_cells,
                                              const std::vector<Correspondence>& reference_cells,
                                              GoldStandardCompleteness completeness) {
    const auto sys = dedup(system_cells);
    const auto ref = dedup(reference_cells);
    std::set<Key> s, r;
    std::set<std::string> ref_entities;
    for (const auto& c : sys) s.insert(key(c));
    for (const auto& c : ref) {
        r.insert(key(c));
        ref_entities.insert(c.source);
        ref_entities.insert(c.target);
    }
    std::vector<OracleRow> rows;
    for (const auto& c : sys) {
        if (r.count(key(c))) {
            rows.push_back({key(c), EvalOutcome::TruePositive, c.confidence});
        } else if (completeness == GoldStandardCompleteness::Complete || ref_entities.count(c.source) ||
                   ref_entities.count(c.target)) {
            rows.push_back({key(c), EvalOutcome::FalsePositive, c.confidence});
        }
    }
    for (const auto& c : ref) {
        if (!s.count(key(c))) rows.push_back({key(c), EvalOutcome::FalseNegative, c.confidence});
    }
    std::sort(rows.begin(), rows.end());
    return rows;
}

inline std::set<Key> oracle_residual(const std::vector<Correspondence>& reference_cells,
                                     const std::vector<Correspondence>& baseline_cells) {
    std::set<Key> r, b, out;
    for (const auto& c : reference_cells) r.insert(key(c));
    for (const auto& c : baseline_cells) b.insert(key(c));
    std::set_difference(r.begin(), r.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

// ---- generators ---------------------------------------------------------------

inline Alignment make_alignment(const std::vector<Correspondence>& cells) {
    Alignment a;
    for (const auto& c : cells) a.add(c);
    return a;
}

inline Correspondence cell(std::string s, std::string t, std::string rel = "=", double conf = 1.0) {
    return Correspondence{std::move(s), std::move(t), Relation::parse(rel), conf, {}};
}

/// Small entity pools so that random alignments overlap and collide.
inline std::vector<Correspondence> random_cells(std::mt19937_64& rng, std::size_t max_cells, bool with_other = true) {
    static const char* const kRelations[] = {"=", "=", "=", ">", "<", "%", "~related", "skos:closeMatch"};
    std::uniform_int_distribution<std::size_t> count(0, max_cells);
    std::uniform_int_distribution<int> entity(0, 7);
    std::uniform_int_distribution<int> relation(0, with_other ? 7 : 5);
    std::uniform_int_distribution<int> quantized(0, 20);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Correspondence> out;
    const std::size_t n = count(rng);
    for (std::size_t i = 0; i < n; ++i) {
        const double conf = (rng() & 1) ? quantized(rng) / 20.0 : unit(rng);
        out.push_back(cell("http://example.org/left#e" + std::to_string(entity(rng)),
                           "http://example.org/right#e" + std::to_string(entity(rng)), kRelations[relation(rng)],
                           conf));
    }
    return out;
}

inline std::string random_text(std::mt19937_64& rng) {
    static const std::string kAlphabet = "abcXYZ019 &<>\"'-_#/:;é漢";
    std::uniform_int_distribution<std::size_t> len(1, 12);
    std::string s;
    const std::size_t n = len(rng);
    while (s.size() < n) {
        std::size_t i = rng() % kAlphabet.size();
        // Copy whole UTF-8 sequences only.
        while (i > 0 && (static_cast<unsigned char>(kAlphabet[i]) & 0xC0) == 0x80) --i;
        std::size_t j = i + 1;
        while (j < kAlphabet.size() && (static_cast<unsigned char>(kAlphabet[j]) & 0xC0) == 0x80) ++j;
        s += kAlphabet.substr(i, j - i);
    }
    // Leading/trailing whitespace is not significant in element text.
    while (!s.empty() && s.front() == ' ') s.erase(s.begin());
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s.empty() ? "x" : s;
}

// ---- independent writer ---------------------------------------------------------

inline std::string xml_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

/// Writes cells exactly as given (duplicates included), in the common
/// Alignment API layout with the `#`-terminated namespace.
inline std::string write_raw_alignment(const std::vector<Correspondence>& cells, const std::string& onto1 = "",
                                       const std::string& onto2 = "") {
    std::string out =
        "<?xml version='1.0' encoding='utf-8'?>\n"
        "<rdf:RDF xmlns='http://knowledgeweb.semanticweb.org/heterogeneity/alignment#'\n"
        "  xmlns:rdf='http://www.w3.org/1999/02/22-rdf-syntax-ns#'>\n<Alignment>\n<xml>yes</xml><level>0</level>"
        "<type>**</type>\n";
    if (!onto1.empty()) out += "<onto1><Ontology rdf:about=\"" + xml_escape(onto1) + "\"/></onto1>\n";
    if (!onto2.empty()) out += "<onto2><Ontology rdf:about=\"" + xml_escape(onto2) + "\"/></onto2>\n";
    for (const auto& c : cells) {
        char measure[64];
        std::snprintf(measure, sizeof measure, "%.17g", c.confidence);
        out += "<map><Cell><entity1 rdf:resource=\"" + xml_escape(c.source) + "\"/><entity2 rdf:resource=\"" +
               xml_escape(c.target) + "\"/><relation>" + xml_escape(c.relation.raw()) + "</relation><measure>" +
               measure + "</measure>";
        for (const auto& [k, v] : c.extensions) {
            // Keys are Clark notation {ns}local.
            const auto close = k.find('}');
            const std::string ns = k.substr(1, close - 1), local = k.substr(close + 1);
            out += "<x:" + local + " xmlns:x=\"" + xml_escape(ns) + "\">" + xml_escape(v) + "</x:" + local + ">";
        }
        out += "</Cell></map>\n";
    }
    out += "</Alignment>\n</rdf:RDF>\n";
    return out;
}

}  // namespace testsupport
