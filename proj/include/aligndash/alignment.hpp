#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace aligndash {

enum class RelationKind { Equivalence, Subsumes, SubsumedBy, Incompatible, Other };

/// A correspondence relation. `raw` is the token exactly as it appeared in the
/// input, so that `Other` relations survive a parse/serialize cycle.
class Relation {
  public:
    Relation() : kind_(RelationKind::Equivalence), raw_("=") {}

    static Relation parse(std::string_view token);
    static Relation of(RelationKind kind);

    RelationKind kind() const { return kind_; }
    const std::string& raw() const { return raw_; }

    friend bool operator==(const Relation&, const Relation&) = default;

  private:
    Relation(RelationKind kind, std::string raw) : kind_(kind), raw_(std::move(raw)) {}

    RelationKind kind_;
    std::string raw_;
};

std::string_view to_string(RelationKind kind);

/// Returns true for `scheme:...` strings (RFC 3986 scheme followed by a colon).
bool is_absolute_uri(std::string_view uri);

using Extensions = std::vector<std::pair<std::string, std::string>>;

struct Correspondence {
    std::string source;
    std::string target;
    Relation relation;
    double confidence = 1.0;
    Extensions extensions;

    friend bool operator==(const Correspondence&, const Correspondence&) = default;
};

/// Identity of a cell within an alignment and the unit of evaluation matching.
struct CellKey {
    std::string source;
    std::string target;
    RelationKind kind = RelationKind::Equivalence;

    friend bool operator==(const CellKey&, const CellKey&) = default;
    friend auto operator<=>(const CellKey&, const CellKey&) = default;
};

CellKey key_of(const Correspondence& c);

struct CellKeyHash {
    std::size_t operator()(const CellKey& k) const noexcept {
        std::size_t h = std::hash<std::string>{}(k.source);
        h ^= std::hash<std::string>{}(k.target) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= static_cast<std::size_t>(k.kind) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

/// A set of correspondences between two ontologies. Cells are unique by
/// CellKey; insertion order is kept for serialization but does not take part
/// in equality.
class Alignment {
  public:
    std::string onto1;
    std::string onto2;
    std::string level = "0";
    std::string type = "**";

    /// Adds a cell, or merges it into an existing cell with the same key by
    /// keeping whichever has the higher confidence (the earlier one on ties).
    /// Returns true if the cell was new.
    bool add(Correspondence c);

    const std::vector<Correspondence>& cells() const { return cells_; }
    std::size_t size() const { return cells_.size(); }
    bool empty() const { return cells_.empty(); }

    bool contains(const CellKey& key) const { return index_.contains(key); }
    const Correspondence* find(const CellKey& key) const;

    /// Same metadata, no cells.
    Alignment empty_copy() const;

    friend bool operator==(const Alignment& a, const Alignment& b);

  private:
    std::vector<Correspondence> cells_;
    std::unordered_map<CellKey, std::size_t, CellKeyHash> index_;
};

}  // namespace aligndash
