#include "aligndash/alignment_io.hpp"

#include <charconv>
#include <cmath>
#include <optional>

#include "aligndash/iri.hpp"
#include "text_util.hpp"
#include "xml_sax.hpp"

namespace aligndash {

namespace {

bool is_alignment_ns(std::string_view ns) {
    if (ns.empty()) return true;
    if (ns.back() == '#') ns.remove_suffix(1);
    return ns == kAlignmentNamespace;
}

enum class Role { Other, Alignment, Map, Level, Type, Onto, Cell, Entity, Relation, Measure, Extension, Inner };

struct Frame {
    Role role = Role::Other;
    std::string base;
    std::string text;
    SourcePosition pos;
};

struct PendingCell {
    SourcePosition pos;
    std::optional<std::string> source;
    std::optional<std::string> target;
    std::optional<std::string> relation;
    std::optional<double> measure;
    Extensions extensions;
};

class AlignmentReader final : public xml::Handler {
  public:
    explicit AlignmentReader(Diagnostics* warnings) : warnings_(warnings) {}

    void attach(const xml::Parser& parser) { parser_ = &parser; }

    Alignment take() { return std::move(result_); }

    void start_element(const xml::Name& name, std::span<const xml::Attribute> attrs) override {
        Frame frame;
        frame.pos = parser_->position();
        frame.base = frames_.empty() ? std::string() : frames_.back().base;
        if (const auto* b = xml::find_attribute(attrs, xml::kXmlNamespace, "base")) {
            frame.base = resolve_iri(frame.base, b->value);
        }
        const Role parent = frames_.empty() ? Role::Other : frames_.back().role;
        frame.role = classify(parent, name);

        switch (frame.role) {
            case Role::Onto:
                onto_about_.reset();
                onto_name_ = std::string(name.local);
                break;
            case Role::Cell:
                cell_ = PendingCell{};
                cell_->pos = frame.pos;
                break;
            case Role::Entity: {
                const auto* res = xml::find_attribute(attrs, kRdfNamespace, "resource");
                if (res == nullptr || res->value.empty()) {
                    throw ParseError(ParseErrorKind::MissingEntity,
                                     std::string(name.local) + " has no rdf:resource", frame.pos);
                }
                std::string uri = resolve_iri(frame.base, res->value);
                if (!is_absolute_uri(uri)) {
                    throw ParseError(ParseErrorKind::MissingEntity,
                                     std::string(name.local) + " is not an absolute URI: " + uri, frame.pos);
                }
                (name.local == "entity1" ? cell_->source : cell_->target) = std::move(uri);
                break;
            }
            case Role::Extension: {
                std::string key = name.ns.empty() ? std::string(name.local)
                                                  : "{" + std::string(name.ns) + "}" + std::string(name.local);
                cell_->extensions.emplace_back(std::move(key), std::string());
                if (const auto* res = xml::find_attribute(attrs, kRdfNamespace, "resource")) {
                    ext_resource_ = std::string(res->value);
                } else {
                    ext_resource_.reset();
                }
                break;
            }
            case Role::Other:
                if (parent == Role::Onto && name.local == "Ontology") {
                    if (const auto* about = xml::find_attribute(attrs, kRdfNamespace, "about")) {
                        onto_about_ = std::string(about->value);
                    }
                }
                break;
            default:
                break;
        }
        frames_.push_back(std::move(frame));
    }

    void characters(std::string_view text) override {
        if (frames_.empty()) return;
        switch (frames_.back().role) {
            case Role::Level:
            case Role::Type:
            case Role::Onto:
            case Role::Relation:
            case Role::Measure:
                frames_.back().text.append(text);
                break;
            case Role::Extension:
            case Role::Inner:
                cell_->extensions.back().second.append(text);
                break;
            default:
                break;
        }
    }

    void end_element(const xml::Name&) override {
        Frame frame = std::move(frames_.back());
        frames_.pop_back();
        switch (frame.role) {
            case Role::Level:
                result_.level = std::string(trim(frame.text));
                break;
            case Role::Type:
                result_.type = std::string(trim(frame.text));
                break;
            case Role::Onto: {
                std::string value = onto_about_ ? *onto_about_ : std::string(trim(frame.text));
                (onto_name_ == "onto1" ? result_.onto1 : result_.onto2) = std::move(value);
                onto_about_.reset();
                break;
            }
            case Role::Relation:
                cell_->relation = std::string(trim(frame.text));
                break;
            case Role::Measure:
                cell_->measure = parse_measure(trim(frame.text), frame.pos);
                break;
            case Role::Extension:
                if (cell_->extensions.back().second.empty() && ext_resource_) {
                    cell_->extensions.back().second = *ext_resource_;
                }
                merge_duplicate_extension();
                break;
            case Role::Cell:
                finish_cell();
                break;
            default:
                break;
        }
    }

  private:
    static Role classify(Role parent, const xml::Name& name) {
        switch (parent) {
            case Role::Other:
                return name.local == "Alignment" && is_alignment_ns(name.ns) ? Role::Alignment : Role::Other;
            case Role::Alignment:
                if (!is_alignment_ns(name.ns)) return Role::Other;
                if (name.local == "level") return Role::Level;
                if (name.local == "type") return Role::Type;
                if (name.local == "onto1" || name.local == "onto2") return Role::Onto;
                if (name.local == "map") return Role::Map;
                if (name.local == "Cell") return Role::Cell;
                return Role::Other;
            case Role::Map:
                return name.local == "Cell" && is_alignment_ns(name.ns) ? Role::Cell : Role::Other;
            case Role::Cell:
                if (is_alignment_ns(name.ns)) {
                    if (name.local == "entity1" || name.local == "entity2") return Role::Entity;
                    if (name.local == "relation") return Role::Relation;
                    if (name.local == "measure") return Role::Measure;
                }
                return Role::Extension;
            case Role::Extension:
            case Role::Inner:
                return Role::Inner;
            default:
                return Role::Other;
        }
    }

    static double parse_measure(std::string_view text, const SourcePosition& pos) {
        double value = 0.0;
        const char* first = text.data();
        const char* last = text.data() + text.size();
        if (!text.empty() && *first == '+') ++first;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (text.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
            throw ParseError(ParseErrorKind::BadMeasure, "measure is not a finite number: '" + std::string(text) + "'",
                             pos);
        }
        return value;
    }

    // A repeated extension key replaces the earlier value in place.
    void merge_duplicate_extension() {
        auto& ext = cell_->extensions;
        for (std::size_t i = 0; i + 1 < ext.size(); ++i) {
            if (ext[i].first == ext.back().first) {
                ext[i].second = std::move(ext.back().second);
                ext.pop_back();
                return;
            }
        }
    }

    void finish_cell() {
        PendingCell cell = std::move(*cell_);
        cell_.reset();
        if (!cell.source || !cell.target) {
            throw ParseError(ParseErrorKind::MissingEntity,
                             std::string("Cell lacks ") + (cell.source ? "entity2" : "entity1"), cell.pos);
        }
        Correspondence c;
        c.source = std::move(*cell.source);
        c.target = std::move(*cell.target);
        c.relation = cell.relation ? Relation::parse(*cell.relation) : Relation::of(RelationKind::Equivalence);
        c.confidence = cell.measure.value_or(1.0);
        c.extensions = std::move(cell.extensions);
        if (warnings_ != nullptr && (c.confidence < 0.0 || c.confidence > 1.0)) {
            warnings_->push_back(
                Diagnostic{cell.pos, "confidence " + format_double(c.confidence) + " outside [0,1] for " + c.source +
                                         " -> " + c.target});
        }
        result_.add(std::move(c));
    }

    const xml::Parser* parser_ = nullptr;
    Diagnostics* warnings_;
    std::vector<Frame> frames_;
    Alignment result_;
    std::optional<PendingCell> cell_;
    std::optional<std::string> onto_about_;
    std::optional<std::string> ext_resource_;
    std::string onto_name_;
};

void append_escaped(std::string& out, std::string_view s, bool attribute) {
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': attribute ? out += "&quot;" : out += ch; break;
            case '\r': out += "&#13;"; break;
            case '\n': attribute ? out += "&#10;" : out += ch; break;
            case '\t': attribute ? out += "&#9;" : out += ch; break;
            default: out += ch;
        }
    }
}

void append_element(std::string& out, std::string_view indent, std::string_view tag, std::string_view text) {
    out.append(indent).append("<").append(tag).append(">");
    append_escaped(out, text, false);
    out.append("</").append(tag).append(">\n");
}

void append_onto(std::string& out, std::string_view tag, std::string_view uri) {
    if (uri.empty()) {
        out.append("  <").append(tag).append("></").append(tag).append(">\n");
        return;
    }
    out.append("  <").append(tag).append(">\n    <Ontology rdf:about=\"");
    append_escaped(out, uri, true);
    out.append("\"/>\n  </").append(tag).append(">\n");
}

void append_extension(std::string& out, const std::string& key, const std::string& value) {
    std::string_view ns;
    std::string_view local = key;
    if (key.starts_with('{')) {
        auto close = key.find('}');
        ns = std::string_view(key).substr(1, close - 1);
        local = std::string_view(key).substr(close + 1);
    }
    if (ns.empty()) {
        out.append("      <").append(local).append(" xmlns=\"\">");
        append_escaped(out, value, false);
        out.append("</").append(local).append(">\n");
        return;
    }
    out.append("      <ext:").append(local).append(" xmlns:ext=\"");
    append_escaped(out, ns, true);
    out.append("\">");
    append_escaped(out, value, false);
    out.append("</ext:").append(local).append(">\n");
}

}  // namespace

Alignment parse_alignment(std::string_view document, Diagnostics* warnings) {
    AlignmentReader reader(warnings);
    xml::Parser parser(reader);
    reader.attach(parser);
    parser.parse(document);
    return reader.take();
}

Alignment read_alignment_file(const std::filesystem::path& path, Diagnostics* warnings) {
    return parse_alignment(read_file(path), warnings);
}

std::string serialize_alignment(const Alignment& alignment) {
    std::string out;
    out.reserve(512 + alignment.size() * 320);
    out.append("<?xml version=\"1.0\" encoding=\"utf-8\"?>\n");
    out.append("<rdf:RDF xmlns=\"").append(kAlignmentNamespace).append("\"\n");
    out.append("         xmlns:rdf=\"").append(kRdfNamespace).append("\"\n");
    out.append("         xmlns:xsd=\"http://www.w3.org/2001/XMLSchema#\">\n");
    out.append("<Alignment>\n");
    append_element(out, "  ", "xml", "yes");
    append_element(out, "  ", "level", alignment.level);
    append_element(out, "  ", "type", alignment.type);
    append_onto(out, "onto1", alignment.onto1);
    append_onto(out, "onto2", alignment.onto2);
    for (const auto& c : alignment.cells()) {
        out.append("  <map>\n    <Cell>\n      <entity1 rdf:resource=\"");
        append_escaped(out, c.source, true);
        out.append("\"/>\n      <entity2 rdf:resource=\"");
        append_escaped(out, c.target, true);
        out.append("\"/>\n");
        append_element(out, "      ", "relation", c.relation.raw());
        out.append("      <measure rdf:datatype=\"http://www.w3.org/2001/XMLSchema#float\">");
        out.append(format_double(c.confidence));
        out.append("</measure>\n");
        for (const auto& [key, value] : c.extensions) append_extension(out, key, value);
        out.append("    </Cell>\n  </map>\n");
    }
    out.append("</Alignment>\n</rdf:RDF>\n");
    return out;
}

}  // namespace aligndash
