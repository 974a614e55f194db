#include "aligndash/ontology_index.hpp"

#include <algorithm>
#include <array>

#include "aligndash/alignment.hpp"
#include "aligndash/errors.hpp"
#include "aligndash/iri.hpp"

namespace aligndash {

namespace {

constexpr std::array<std::pair<ElementType, std::string_view>, 7> kTokens{{
    {ElementType::Class, "CLASS"},
    {ElementType::ObjectProperty, "OBJECT_PROPERTY"},
    {ElementType::DatatypeProperty, "DATATYPE_PROPERTY"},
    {ElementType::AnnotationProperty, "ANNOTATION_PROPERTY"},
    {ElementType::GenericProperty, "RDF_PROPERTY"},
    {ElementType::Instance, "INSTANCE"},
    {ElementType::Unknown, "UNKNOWN"},
}};

unsigned bit(ElementType t) { return 1u << static_cast<unsigned>(t); }

std::optional<ElementType> vocabulary_type(std::string_view object) {
    using namespace rdf;
    if (object.starts_with(kOwl)) {
        const auto local = object.substr(kOwl.size());
        if (local == "Class") return ElementType::Class;
        if (local == "ObjectProperty") return ElementType::ObjectProperty;
        if (local == "DatatypeProperty") return ElementType::DatatypeProperty;
        if (local == "AnnotationProperty") return ElementType::AnnotationProperty;
        if (local == "NamedIndividual") return ElementType::Instance;
    } else if (object.starts_with(kRdfs)) {
        if (object.substr(kRdfs.size()) == "Class") return ElementType::Class;
    } else if (object.starts_with(kRdf)) {
        if (object.substr(kRdf.size()) == "Property") return ElementType::GenericProperty;
    }
    return std::nullopt;
}

const std::vector<std::string> kNoLabels;

}  // namespace

std::string_view to_token(ElementType type) {
    for (const auto& [t, token] : kTokens) {
        if (t == type) return token;
    }
    return "UNKNOWN";
}

std::optional<ElementType> element_type_from_token(std::string_view token) {
    for (const auto& [t, name] : kTokens) {
        if (name == token) return t;
    }
    return std::nullopt;
}

ElementType OntologyIndex::type_of(std::string_view uri) const {
    auto it = types_.find(std::string(uri));
    return it == types_.end() ? ElementType::Unknown : it->second;
}

const std::vector<std::string>& OntologyIndex::declared_labels(std::string_view uri) const {
    auto it = labels_.find(std::string(uri));
    return it == labels_.end() ? kNoLabels : it->second;
}

std::vector<std::string> OntologyIndex::labels_of(std::string_view uri) const {
    std::vector<std::string> out;
    const auto& declared = declared_labels(uri);
    out.reserve(1 + declared.size());
    out.emplace_back(local_name(uri));
    out.insert(out.end(), declared.begin(), declared.end());
    return out;
}

std::vector<std::string> OntologyIndex::entities() const {
    std::vector<std::string> out;
    out.reserve(types_.size() + labels_.size());
    for (const auto& [uri, type] : types_) out.push_back(uri);
    for (const auto& [uri, labels] : labels_) {
        if (!types_.contains(uri)) out.push_back(uri);
    }
    std::sort(out.begin(), out.end());
    return out;
}

OntologyIndexBuilder::OntologyIndexBuilder(std::string origin) : origin_(std::move(origin)) {}

void OntologyIndexBuilder::add(const rdf::Triple& t) {
    if (!t.subject.is_iri() || !t.predicate.is_iri()) return;
    const std::string_view p = t.predicate.value;
    if (p.size() == rdf::kRdf.size() + 4 && p.starts_with(rdf::kRdf) && p.ends_with("type")) {
        if (!t.object.is_iri()) return;
        Entry& e = entries_[t.subject.value];
        if (auto declared = vocabulary_type(t.object.value)) {
            e.declared |= bit(*declared);
        } else {
            e.type_objects.push_back(t.object.value);
        }
    } else if (p.size() == rdf::kRdfs.size() + 5 && p.starts_with(rdf::kRdfs) && p.ends_with("label")) {
        if (t.object.is_literal()) labels_[t.subject.value].push_back(t.object.value);
    }
}

OntologyIndex OntologyIndexBuilder::build() && {
    OntologyIndex index;
    index.origin_ = std::move(origin_);

    auto declares_class = [&](const std::string& uri) {
        auto it = entries_.find(uri);
        return it != entries_.end() && (it->second.declared & bit(ElementType::Class)) != 0;
    };

    for (auto& [uri, entry] : entries_) {
        unsigned declared = entry.declared;
        if ((declared & ~bit(ElementType::Instance)) == 0) {
            if (std::any_of(entry.type_objects.begin(), entry.type_objects.end(), declares_class)) {
                declared |= bit(ElementType::Instance);
            }
        }
        if (declared == 0) continue;
        for (unsigned t = 0; t < static_cast<unsigned>(ElementType::Unknown); ++t) {
            if ((declared & (1u << t)) != 0) {
                index.types_.emplace(uri, static_cast<ElementType>(t));
                break;
            }
        }
    }
    index.labels_ = std::move(labels_);
    return index;
}

OntologyIndex load_ontology(std::string_view document, rdf::Syntax syntax, std::string origin) {
    const std::string base = is_absolute_uri(origin) ? origin : std::string();
    OntologyIndexBuilder builder(std::move(origin));
    rdf::parse(document, syntax, [&](const rdf::Triple& t) { builder.add(t); }, base);
    return std::move(builder).build();
}

OntologyIndex load_ontology_file(const std::filesystem::path& path, std::optional<rdf::Syntax> syntax) {
    const rdf::Syntax chosen = syntax ? *syntax : rdf::syntax_from_extension(path);
    const std::string bytes = read_file(path);
    // Relative IRIs resolve against the file's own location.
    const std::string base = "file://" + std::filesystem::absolute(path).lexically_normal().generic_string();
    OntologyIndexBuilder builder(path.string());
    rdf::parse(bytes, chosen, [&](const rdf::Triple& t) { builder.add(t); }, base);
    return std::move(builder).build();
}

}  // namespace aligndash
