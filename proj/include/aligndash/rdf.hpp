#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace aligndash::rdf {

inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kOwl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";

enum class TermKind { Iri, Blank, Literal };

struct Term {
    TermKind kind = TermKind::Iri;
    std::string value;     // IRI text, blank node label, or literal lexical form
    std::string datatype;  // literals only; empty for plain/language-tagged
    std::string lang;      // literals only

    static Term iri(std::string v) { return Term{TermKind::Iri, std::move(v), {}, {}}; }
    static Term blank(std::string label) { return Term{TermKind::Blank, std::move(label), {}, {}}; }
    static Term literal(std::string v, std::string datatype = {}, std::string lang = {}) {
        return Term{TermKind::Literal, std::move(v), std::move(datatype), std::move(lang)};
    }

    bool is_iri() const { return kind == TermKind::Iri; }
    bool is_blank() const { return kind == TermKind::Blank; }
    bool is_literal() const { return kind == TermKind::Literal; }

    friend bool operator==(const Term&, const Term&) = default;
};

struct Triple {
    Term subject;
    Term predicate;
    Term object;

    friend bool operator==(const Triple&, const Triple&) = default;
};

using TripleSink = std::function<void(const Triple&)>;

enum class Syntax { RdfXml, Turtle, NTriples };

std::string_view to_string(Syntax syntax);

/// Accepts "rdfxml", "turtle" and "ntriples" (case-insensitive).
std::optional<Syntax> syntax_from_name(std::string_view name);

/// .rdf/.owl/.xml, .ttl and .nt. Throws ParseError(UnsupportedSyntax) otherwise.
Syntax syntax_from_extension(const std::filesystem::path& path);

/// Streams every triple of `document` into `sink`. Relative IRIs resolve
/// against `base`. Throws ParseError (XmlSyntax for RDF/XML that is not
/// well-formed, RdfSyntax otherwise) carrying the input position.
void parse(std::string_view document, Syntax syntax, const TripleSink& sink, std::string_view base = {});

void parse_rdfxml(std::string_view document, const TripleSink& sink, std::string_view base = {});
void parse_turtle(std::string_view document, const TripleSink& sink, std::string_view base = {});
void parse_ntriples(std::string_view document, const TripleSink& sink);

}  // namespace aligndash::rdf
