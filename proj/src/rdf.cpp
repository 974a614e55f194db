#include "aligndash/rdf.hpp"

#include "aligndash/errors.hpp"
#include "text_util.hpp"

namespace aligndash::rdf {

std::string_view to_string(Syntax syntax) {
    switch (syntax) {
        case Syntax::RdfXml: return "rdfxml";
        case Syntax::Turtle: return "turtle";
        case Syntax::NTriples: return "ntriples";
    }
    return "rdfxml";
}

std::optional<Syntax> syntax_from_name(std::string_view name) {
    const std::string lower = ascii_lower(name);
    if (lower == "rdfxml") return Syntax::RdfXml;
    if (lower == "turtle") return Syntax::Turtle;
    if (lower == "ntriples") return Syntax::NTriples;
    return std::nullopt;
}

Syntax syntax_from_extension(const std::filesystem::path& path) {
    const std::string ext = ascii_lower(path.extension().string());
    if (ext == ".rdf" || ext == ".owl" || ext == ".xml") return Syntax::RdfXml;
    if (ext == ".ttl") return Syntax::Turtle;
    if (ext == ".nt") return Syntax::NTriples;
    throw ParseError(ParseErrorKind::UnsupportedSyntax,
                     "cannot infer RDF syntax from extension '" + path.extension().string() + "' of " + path.string());
}

void parse(std::string_view document, Syntax syntax, const TripleSink& sink, std::string_view base) {
    switch (syntax) {
        case Syntax::RdfXml: return parse_rdfxml(document, sink, base);
        case Syntax::Turtle: return parse_turtle(document, sink, base);
        case Syntax::NTriples: return parse_ntriples(document, sink);
    }
}

}  // namespace aligndash::rdf
