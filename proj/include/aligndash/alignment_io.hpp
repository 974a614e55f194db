#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "aligndash/alignment.hpp"
#include "aligndash/errors.hpp"

namespace aligndash {

inline constexpr std::string_view kAlignmentNamespace = "http://knowledgeweb.semanticweb.org/heterogeneity/alignment";
inline constexpr std::string_view kRdfNamespace = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";

/// Reads an Alignment API RDF/XML document.
///
/// Cells missing `measure` get confidence 1.0 and cells missing `relation`
/// are equivalences. Duplicate (source, target, relation kind) cells collapse
/// to the one with the highest confidence. Confidences outside [0,1] are kept
/// as-is and reported through `warnings` when a sink is given.
///
/// Throws ParseError with kind XmlSyntax, MissingEntity or BadMeasure.
Alignment parse_alignment(std::string_view document, Diagnostics* warnings = nullptr);

Alignment read_alignment_file(const std::filesystem::path& path, Diagnostics* warnings = nullptr);

std::string serialize_alignment(const Alignment& alignment);

}  // namespace aligndash
