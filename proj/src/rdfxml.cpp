// RDF/XML as a streaming state machine over SAX events. Covers node and
// property elements, typed nodes, property attributes, rdf:li, xml:base,
// xml:lang, rdf:datatype and parseType Resource/Literal/Collection.
// Reification through rdf:ID on property elements is not materialized.

#include <cstdint>
#include <optional>
#include <vector>

#include "aligndash/iri.hpp"
#include "aligndash/rdf.hpp"
#include "text_util.hpp"
#include "xml_sax.hpp"

namespace aligndash::rdf {

namespace {

enum class FrameKind { Top, Node, Property, ResourceProperty, LiteralProperty, CollectionProperty };

struct Frame {
    FrameKind kind = FrameKind::Top;
    std::string base;
    std::string lang;
    Term subject;    // Node / ResourceProperty: the node; properties: the parent node
    Term predicate;  // property frames
    std::optional<Term> object;
    std::string text;
    std::string datatype;
    std::vector<Term> items;  // collection members
    std::uint64_t li_counter = 0;
};

bool is_syntax_attribute(const xml::Name& n) {
    if (n.ns == xml::kXmlNamespace) return true;
    if (n.ns.empty()) return true;  // unqualified attributes carry no RDF meaning
    if (n.ns != kRdf) return false;
    return n.local == "about" || n.local == "ID" || n.local == "nodeID" || n.local == "resource" ||
           n.local == "parseType" || n.local == "datatype" || n.local == "bagID" || n.local == "aboutEach" ||
           n.local == "aboutEachPrefix";
}

std::string expanded(const xml::Name& n) { return std::string(n.ns) + std::string(n.local); }

class RdfXmlReader final : public xml::Handler {
  public:
    RdfXmlReader(const TripleSink& sink, std::string_view base) : sink_(sink), doc_base_(base) {}

    void attach(const xml::Parser& parser) { parser_ = &parser; }

    void start_element(const xml::Name& name, std::span<const xml::Attribute> attrs) override {
        if (!frames_.empty() && frames_.back().kind == FrameKind::LiteralProperty) {
            ++literal_depth_;
            append_literal_start(frames_.back().text, name, attrs);
            return;
        }

        Frame frame;
        frame.base = frames_.empty() ? doc_base_ : frames_.back().base;
        frame.lang = frames_.empty() ? std::string() : frames_.back().lang;
        for (const auto& a : attrs) {
            if (a.name.ns != xml::kXmlNamespace) continue;
            if (a.name.local == "base") frame.base = resolve_iri(frame.base, a.value);
            if (a.name.local == "lang") frame.lang = std::string(a.value);
        }

        if (frames_.empty()) {
            if (name.is(kRdf, "RDF")) {
                frame.kind = FrameKind::Top;
                frames_.push_back(std::move(frame));
                return;
            }
            start_node(std::move(frame), name, attrs);
            return;
        }

        Frame& parent = frames_.back();
        switch (parent.kind) {
            case FrameKind::Top:
                start_node(std::move(frame), name, attrs);
                break;
            case FrameKind::Node:
            case FrameKind::ResourceProperty:
                start_property(std::move(frame), parent, name, attrs);
                break;
            case FrameKind::Property:
                if (parent.object) error("property element " + expanded(name) + " has more than one object");
                if (!trim(parent.text).empty()) error("mixed text and element content in property");
                start_node(std::move(frame), name, attrs);
                break;
            case FrameKind::CollectionProperty:
                start_node(std::move(frame), name, attrs);
                break;
            default:
                break;
        }
    }

    void end_element(const xml::Name& name) override {
        if (frames_.back().kind == FrameKind::LiteralProperty && literal_depth_ > 0) {
            --literal_depth_;
            frames_.back().text.append("</").append(name.local).append(">");
            return;
        }

        Frame frame = std::move(frames_.back());
        frames_.pop_back();
        switch (frame.kind) {
            case FrameKind::Node:
                if (!frames_.empty()) {
                    Frame& parent = frames_.back();
                    if (parent.kind == FrameKind::Property) parent.object = frame.subject;
                    if (parent.kind == FrameKind::CollectionProperty) parent.items.push_back(frame.subject);
                }
                break;
            case FrameKind::Property:
                if (frame.object) {
                    emit(frame.subject, frame.predicate, *frame.object);
                } else if (!frame.datatype.empty()) {
                    emit(frame.subject, frame.predicate, Term::literal(std::move(frame.text), frame.datatype));
                } else {
                    emit(frame.subject, frame.predicate, Term::literal(std::move(frame.text), {}, frame.lang));
                }
                break;
            case FrameKind::LiteralProperty:
                emit(frame.subject, frame.predicate, Term::literal(std::move(frame.text), std::string(kRdf) + "XMLLiteral"));
                break;
            case FrameKind::CollectionProperty:
                emit_collection(frame);
                break;
            default:
                break;
        }
    }

    void characters(std::string_view text) override {
        if (frames_.empty()) return;
        Frame& top = frames_.back();
        switch (top.kind) {
            case FrameKind::Property:
                if (top.object && !trim(text).empty()) error("mixed text and element content in property");
                top.text.append(text);
                break;
            case FrameKind::LiteralProperty:
                append_xml_escaped(top.text, text);
                break;
            default:
                if (!trim(text).empty()) error("unexpected text '" + std::string(trim(text)) + "'");
        }
    }

  private:
    [[noreturn]] void error(const std::string& message) const {
        throw ParseError(ParseErrorKind::RdfSyntax, message, parser_ ? parser_->position() : SourcePosition{});
    }

    void emit(const Term& s, const Term& p, const Term& o) { sink_(Triple{s, p, o}); }

    Term fresh_blank() { return Term::blank("g" + std::to_string(++blank_counter_)); }

    Term resolve(const Frame& f, std::string_view ref) const { return Term::iri(resolve_iri(f.base, ref)); }

    void start_node(Frame frame, const xml::Name& name, std::span<const xml::Attribute> attrs) {
        frame.kind = FrameKind::Node;
        if (const auto* about = xml::find_attribute(attrs, kRdf, "about")) {
            frame.subject = resolve(frame, about->value);
        } else if (const auto* id = xml::find_attribute(attrs, kRdf, "ID")) {
            frame.subject = resolve(frame, "#" + std::string(id->value));
        } else if (const auto* node_id = xml::find_attribute(attrs, kRdf, "nodeID")) {
            frame.subject = Term::blank("n" + std::string(node_id->value));
        } else {
            frame.subject = fresh_blank();
        }
        if (!name.is(kRdf, "Description")) {
            emit(frame.subject, Term::iri(std::string(kRdf) + "type"), Term::iri(expanded(name)));
        }
        emit_property_attributes(frame, frame.subject, attrs);
        frames_.push_back(std::move(frame));
    }

    void emit_property_attributes(const Frame& frame, const Term& subject, std::span<const xml::Attribute> attrs) {
        for (const auto& a : attrs) {
            if (is_syntax_attribute(a.name)) continue;
            if (a.name.is(kRdf, "type")) {
                emit(subject, Term::iri(std::string(kRdf) + "type"), resolve(frame, a.value));
            } else {
                emit(subject, Term::iri(expanded(a.name)), Term::literal(std::string(a.value), {}, frame.lang));
            }
        }
    }

    void start_property(Frame frame, Frame& parent, const xml::Name& name, std::span<const xml::Attribute> attrs) {
        frame.subject = parent.subject;
        if (name.is(kRdf, "li")) {
            frame.predicate = Term::iri(std::string(kRdf) + "_" + std::to_string(++parent.li_counter));
        } else {
            frame.predicate = Term::iri(expanded(name));
        }

        const auto* parse_type = xml::find_attribute(attrs, kRdf, "parseType");
        if (parse_type != nullptr) {
            if (parse_type->value == "Resource") {
                Term node = fresh_blank();
                emit(frame.subject, frame.predicate, node);
                frame.kind = FrameKind::ResourceProperty;
                frame.subject = std::move(node);
            } else if (parse_type->value == "Collection") {
                frame.kind = FrameKind::CollectionProperty;
            } else {
                frame.kind = FrameKind::LiteralProperty;
            }
            frames_.push_back(std::move(frame));
            return;
        }

        frame.kind = FrameKind::Property;
        if (const auto* dt = xml::find_attribute(attrs, kRdf, "datatype")) {
            frame.datatype = resolve_iri(frame.base, dt->value);
        }

        bool has_property_attrs = false;
        for (const auto& a : attrs) has_property_attrs |= !is_syntax_attribute(a.name);

        std::optional<Term> object;
        if (const auto* res = xml::find_attribute(attrs, kRdf, "resource")) {
            object = resolve(frame, res->value);
        } else if (const auto* node_id = xml::find_attribute(attrs, kRdf, "nodeID")) {
            object = Term::blank("n" + std::string(node_id->value));
        } else if (has_property_attrs) {
            object = fresh_blank();
        }
        if (object) {
            emit_property_attributes(frame, *object, attrs);
            frame.object = std::move(object);
        }
        frames_.push_back(std::move(frame));
    }

    void emit_collection(const Frame& frame) {
        const Term nil = Term::iri(std::string(kRdf) + "nil");
        const Term first = Term::iri(std::string(kRdf) + "first");
        const Term rest = Term::iri(std::string(kRdf) + "rest");
        if (frame.items.empty()) {
            emit(frame.subject, frame.predicate, nil);
            return;
        }
        Term cell = fresh_blank();
        emit(frame.subject, frame.predicate, cell);
        for (std::size_t i = 0; i < frame.items.size(); ++i) {
            emit(cell, first, frame.items[i]);
            Term next = i + 1 == frame.items.size() ? nil : fresh_blank();
            emit(cell, rest, next);
            cell = std::move(next);
        }
    }

    static void append_xml_escaped(std::string& out, std::string_view text) {
        for (char ch : text) {
            if (ch == '&') out += "&amp;";
            else if (ch == '<') out += "&lt;";
            else if (ch == '>') out += "&gt;";
            else out += ch;
        }
    }

    static void append_literal_start(std::string& out, const xml::Name& name, std::span<const xml::Attribute> attrs) {
        out.append("<").append(name.local);
        for (const auto& a : attrs) {
            out.append(" ").append(a.name.local).append("=\"");
            append_xml_escaped(out, a.value);
            out.append("\"");
        }
        out.append(">");
    }

    const TripleSink& sink_;
    std::string doc_base_;
    const xml::Parser* parser_ = nullptr;
    std::vector<Frame> frames_;
    std::uint64_t blank_counter_ = 0;
    int literal_depth_ = 0;
};

}  // namespace

void parse_rdfxml(std::string_view document, const TripleSink& sink, std::string_view base) {
    RdfXmlReader reader(sink, base);
    xml::Parser parser(reader);
    reader.attach(parser);
    parser.parse(document);
}

}  // namespace aligndash::rdf
