#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "aligndash/rdf.hpp"

namespace aligndash {

/// Declared kind of an ontology entity. Enumerators are listed in precedence
/// order: when one URI carries several declarations the earliest wins.
enum class ElementType { Class, ObjectProperty, DatatypeProperty, AnnotationProperty, GenericProperty, Instance, Unknown };

/// The upper-case token used in dataset exports, e.g. "OBJECT_PROPERTY".
std::string_view to_token(ElementType type);
std::optional<ElementType> element_type_from_token(std::string_view token);

/// Declared types and labels of the named entities of one ontology. No
/// inference is performed; blank nodes are ignored.
class OntologyIndex {
  public:
    OntologyIndex() = default;

    /// Unknown for anything that was not declared.
    ElementType type_of(std::string_view uri) const;

    /// Local name first, then rdfs:label values in document order.
    std::vector<std::string> labels_of(std::string_view uri) const;

    /// rdfs:label values only, in document order.
    const std::vector<std::string>& declared_labels(std::string_view uri) const;

    /// Every URI that received a type or a label, sorted.
    std::vector<std::string> entities() const;

    const std::string& origin() const { return origin_; }

    friend bool operator==(const OntologyIndex&, const OntologyIndex&) = default;

  private:
    friend class OntologyIndexBuilder;

    std::unordered_map<std::string, ElementType> types_;
    std::unordered_map<std::string, std::vector<std::string>> labels_;
    std::string origin_;
};

/// Accumulates triples and resolves entity types once all have been seen,
/// since instance typing depends on which classes the ontology declares.
class OntologyIndexBuilder {
  public:
    explicit OntologyIndexBuilder(std::string origin = {});

    void add(const rdf::Triple& triple);
    OntologyIndex build() &&;

  private:
    struct Entry {
        unsigned declared = 0;  // bit per ElementType
        std::vector<std::string> type_objects;
    };

    std::unordered_map<std::string, Entry> entries_;
    std::unordered_map<std::string, std::vector<std::string>> labels_;
    std::string origin_;
};

OntologyIndex load_ontology(std::string_view document, rdf::Syntax syntax, std::string origin = {});

/// Syntax is taken from the file extension unless `syntax` is given.
OntologyIndex load_ontology_file(const std::filesystem::path& path, std::optional<rdf::Syntax> syntax = std::nullopt);

}  // namespace aligndash
