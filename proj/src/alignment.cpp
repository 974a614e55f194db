#include "aligndash/alignment.hpp"

#include <cctype>

namespace aligndash {

Relation Relation::parse(std::string_view token) {
    if (token == "=") return Relation(RelationKind::Equivalence, "=");
    if (token == ">") return Relation(RelationKind::Subsumes, ">");
    if (token == "<") return Relation(RelationKind::SubsumedBy, "<");
    if (token == "%") return Relation(RelationKind::Incompatible, "%");
    return Relation(RelationKind::Other, std::string(token));
}

Relation Relation::of(RelationKind kind) {
    switch (kind) {
        case RelationKind::Equivalence: return parse("=");
        case RelationKind::Subsumes: return parse(">");
        case RelationKind::SubsumedBy: return parse("<");
        case RelationKind::Incompatible: return parse("%");
        case RelationKind::Other: break;
    }
    return Relation(RelationKind::Other, "");
}

std::string_view to_string(RelationKind kind) {
    switch (kind) {
        case RelationKind::Equivalence: return "Equivalence";
        case RelationKind::Subsumes: return "Subsumes";
        case RelationKind::SubsumedBy: return "SubsumedBy";
        case RelationKind::Incompatible: return "Incompatible";
        case RelationKind::Other: return "Other";
    }
    return "Other";
}

bool is_absolute_uri(std::string_view uri) {
    if (uri.empty() || !std::isalpha(static_cast<unsigned char>(uri[0]))) return false;
    for (std::size_t i = 1; i < uri.size(); ++i) {
        const auto ch = static_cast<unsigned char>(uri[i]);
        if (ch == ':') return true;
        if (!std::isalnum(ch) && ch != '+' && ch != '-' && ch != '.') return false;
    }
    return false;
}

CellKey key_of(const Correspondence& c) {
    return CellKey{c.source, c.target, c.relation.kind()};
}

bool Alignment::add(Correspondence c) {
    auto key = key_of(c);
    auto it = index_.find(key);
    if (it == index_.end()) {
        index_.emplace(std::move(key), cells_.size());
        cells_.push_back(std::move(c));
        return true;
    }
    Correspondence& existing = cells_[it->second];
    if (c.confidence > existing.confidence) existing = std::move(c);
    return false;
}

const Correspondence* Alignment::find(const CellKey& key) const {
    auto it = index_.find(key);
    return it == index_.end() ? nullptr : &cells_[it->second];
}

Alignment Alignment::empty_copy() const {
    Alignment out;
    out.onto1 = onto1;
    out.onto2 = onto2;
    out.level = level;
    out.type = type;
    return out;
}

bool operator==(const Alignment& a, const Alignment& b) {
    if (a.onto1 != b.onto1 || a.onto2 != b.onto2 || a.level != b.level || a.type != b.type) return false;
    if (a.size() != b.size()) return false;
    for (const auto& cell : a.cells_) {
        const Correspondence* other = b.find(key_of(cell));
        if (other == nullptr || !(*other == cell)) return false;
    }
    return true;
}

}  // namespace aligndash
