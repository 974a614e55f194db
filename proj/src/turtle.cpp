// Recursive-descent Turtle 1.1 reader. N-Triples goes through the same code
// with `strict_` set, which rejects everything N-Triples does not allow.

#include <cctype>
#include <cstdint>
#include <unordered_map>

#include "aligndash/alignment.hpp"
#include "aligndash/errors.hpp"
#include "aligndash/iri.hpp"
#include "aligndash/rdf.hpp"
#include "text_util.hpp"

namespace aligndash::rdf {

namespace {

bool is_name_start(unsigned char ch) {
    return (ch >= 'A' && ch <= 'Z') || (ch >= 'a' && ch <= 'z') || ch == '_' || ch >= 0x80;
}

bool is_name_char(unsigned char ch) {
    return is_name_start(ch) || (ch >= '0' && ch <= '9') || ch == '-' || ch == '.';
}

bool is_digit(char ch) { return ch >= '0' && ch <= '9'; }

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

class TurtleParser {
  public:
    TurtleParser(std::string_view src, const TripleSink& sink, std::string_view base, bool strict)
        : src_(src), sink_(sink), base_(base), strict_(strict) {}

    void run() {
        if (src_.starts_with("\xEF\xBB\xBF")) pos_ = 3;
        for (;;) {
            skip_ws();
            if (at_end()) return;
            statement();
        }
    }

  private:
    // ---- low level -------------------------------------------------------

    bool at_end() const { return pos_ >= src_.size(); }
    char peek(std::size_t ahead = 0) const { return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0'; }

    [[noreturn]] void fail(const std::string& message, std::size_t at) const {
        SourcePosition p;
        p.byte = at;
        p.line = 1;
        std::size_t line_start = 0;
        for (std::size_t i = 0; i < at && i < src_.size(); ++i) {
            if (src_[i] == '\n') {
                ++p.line;
                line_start = i + 1;
            }
        }
        p.column = at - line_start + 1;
        throw ParseError(ParseErrorKind::RdfSyntax, message, p);
    }
    [[noreturn]] void fail(const std::string& message) const { fail(message, pos_); }

    void skip_ws() {
        while (!at_end()) {
            const char ch = src_[pos_];
            if (ch == '#') {
                while (!at_end() && src_[pos_] != '\n') ++pos_;
            } else if (is_ascii_space(ch)) {
                ++pos_;
            } else {
                return;
            }
        }
    }

    void expect(char ch) {
        skip_ws();
        if (peek() != ch) fail(std::string("expected '") + ch + "'");
        ++pos_;
    }

    bool match_keyword(std::string_view kw, bool case_insensitive) {
        if (src_.size() - pos_ < kw.size()) return false;
        std::string_view here = src_.substr(pos_, kw.size());
        if (case_insensitive ? ascii_lower(here) != ascii_lower(kw) : here != kw) return false;
        const auto next = static_cast<unsigned char>(peek(kw.size()));
        if (is_name_char(next) || next == ':') return false;
        pos_ += kw.size();
        return true;
    }

    void not_in_ntriples(std::string_view what) const {
        if (strict_) fail(std::string(what) + " is not allowed in N-Triples");
    }

    // ---- grammar -----------------------------------------------------------

    void statement() {
        const std::size_t start = pos_;
        if (peek() == '@') {
            not_in_ntriples("directive");
            ++pos_;
            if (match_keyword("prefix", false)) {
                prefix_decl();
                expect('.');
            } else if (match_keyword("base", false)) {
                base_decl();
                expect('.');
            } else {
                fail("unknown directive", start);
            }
            return;
        }
        if (!strict_) {
            if (match_keyword("PREFIX", true)) return prefix_decl();
            if (match_keyword("BASE", true)) return base_decl();
        }
        triples();
        expect('.');
    }

    void prefix_decl() {
        skip_ws();
        const std::size_t start = pos_;
        while (!at_end() && peek() != ':' && is_name_char(static_cast<unsigned char>(peek()))) ++pos_;
        if (peek() != ':') fail("expected prefix name ending in ':'", start);
        std::string prefix(src_.substr(start, pos_ - start));
        ++pos_;
        skip_ws();
        prefixes_[prefix] = iri_ref();
    }

    void base_decl() {
        skip_ws();
        base_ = iri_ref();
    }

    void triples() {
        skip_ws();
        if (peek() == '[') {
            Term subject = blank_property_list();
            skip_ws();
            if (peek() != '.') predicate_object_list(subject);
            return;
        }
        Term subject = subject_term();
        predicate_object_list(subject);
    }

    Term subject_term() {
        skip_ws();
        const char ch = peek();
        if (ch == '<') return Term::iri(iri_ref());
        if (ch == '_' && peek(1) == ':') return blank_label();
        if (ch == '(') return collection();
        if (ch == '"' || ch == '\'' || is_digit(ch) || ch == '+' || ch == '-') fail("literal in subject position");
        return Term::iri(prefixed_name());
    }

    void predicate_object_list(const Term& subject) {
        for (;;) {
            Term predicate = verb();
            object_list(subject, predicate);
            skip_ws();
            if (peek() != ';') return;
            not_in_ntriples("';'");
            while (peek() == ';') {
                ++pos_;
                skip_ws();
            }
            // A trailing ';' may end the list.
            if (peek() == '.' || peek() == ']' || at_end()) return;
        }
    }

    Term verb() {
        skip_ws();
        if (peek() == 'a' && !is_name_char(static_cast<unsigned char>(peek(1))) && peek(1) != ':') {
            not_in_ntriples("'a'");
            ++pos_;
            return Term::iri(std::string(kRdf) + "type");
        }
        if (peek() == '<') return Term::iri(iri_ref());
        if (peek() == '_' || peek() == '[' || peek() == '(' || peek() == '"') fail("invalid predicate");
        return Term::iri(prefixed_name());
    }

    void object_list(const Term& subject, const Term& predicate) {
        for (;;) {
            Term object = object_term();
            sink_(Triple{subject, predicate, std::move(object)});
            skip_ws();
            if (peek() != ',') return;
            not_in_ntriples("','");
            ++pos_;
        }
    }

    Term object_term() {
        skip_ws();
        const char ch = peek();
        if (ch == '<') return Term::iri(iri_ref());
        if (ch == '_' && peek(1) == ':') return blank_label();
        if (ch == '[') return blank_property_list();
        if (ch == '(') return collection();
        if (ch == '"' || ch == '\'') return rdf_literal();
        if (is_digit(ch) || ch == '+' || ch == '-' || (ch == '.' && is_digit(peek(1)))) return numeric_literal();
        if (match_keyword("true", false)) {
            not_in_ntriples("boolean literal");
            return Term::literal("true", std::string(kXsd) + "boolean");
        }
        if (match_keyword("false", false)) {
            not_in_ntriples("boolean literal");
            return Term::literal("false", std::string(kXsd) + "boolean");
        }
        if (at_end()) fail("unexpected end of input");
        return Term::iri(prefixed_name());
    }

    Term blank_property_list() {
        not_in_ntriples("'['");
        expect('[');
        Term node = fresh_blank();
        skip_ws();
        if (peek() != ']') predicate_object_list(node);
        expect(']');
        return node;
    }

    Term collection() {
        not_in_ntriples("collection");
        expect('(');
        std::vector<Term> items;
        for (;;) {
            skip_ws();
            if (peek() == ')') {
                ++pos_;
                break;
            }
            if (at_end()) fail("unterminated collection");
            items.push_back(object_term());
        }
        const Term nil = Term::iri(std::string(kRdf) + "nil");
        if (items.empty()) return nil;
        const Term first = Term::iri(std::string(kRdf) + "first");
        const Term rest = Term::iri(std::string(kRdf) + "rest");
        Term head = fresh_blank();
        Term cell = head;
        for (std::size_t i = 0; i < items.size(); ++i) {
            sink_(Triple{cell, first, items[i]});
            Term next = i + 1 == items.size() ? nil : fresh_blank();
            sink_(Triple{cell, rest, next});
            cell = std::move(next);
        }
        return head;
    }

    Term fresh_blank() { return Term::blank("g" + std::to_string(++blank_counter_)); }

    Term blank_label() {
        pos_ += 2;
        const std::size_t start = pos_;
        while (!at_end() && is_name_char(static_cast<unsigned char>(peek()))) ++pos_;
        while (pos_ > start && src_[pos_ - 1] == '.') --pos_;
        if (pos_ == start) fail("empty blank node label");
        return Term::blank("t" + std::string(src_.substr(start, pos_ - start)));
    }

    std::uint32_t hex_escape(std::size_t digits) {
        if (src_.size() - pos_ < digits) fail("truncated unicode escape");
        std::uint32_t cp = 0;
        for (std::size_t i = 0; i < digits; ++i) {
            const char h = src_[pos_++];
            cp <<= 4;
            if (h >= '0' && h <= '9') cp |= static_cast<std::uint32_t>(h - '0');
            else if (h >= 'a' && h <= 'f') cp |= static_cast<std::uint32_t>(h - 'a' + 10);
            else if (h >= 'A' && h <= 'F') cp |= static_cast<std::uint32_t>(h - 'A' + 10);
            else fail("bad hex digit in unicode escape", pos_ - 1);
        }
        if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) fail("invalid code point in escape");
        return cp;
    }

    std::string iri_ref() {
        skip_ws();
        const std::size_t start = pos_;
        if (peek() != '<') fail("expected IRI");
        ++pos_;
        std::string out;
        for (;;) {
            if (at_end()) fail("unterminated IRI", start);
            const char ch = src_[pos_++];
            if (ch == '>') break;
            if (ch == '\\') {
                const char kind = peek();
                ++pos_;
                if (kind == 'u') append_utf8(out, hex_escape(4));
                else if (kind == 'U') append_utf8(out, hex_escape(8));
                else fail("invalid escape in IRI", pos_ - 2);
                continue;
            }
            if (static_cast<unsigned char>(ch) <= 0x20 || ch == '"' || ch == '{' || ch == '}' || ch == '|' ||
                ch == '^' || ch == '`') {
                fail("invalid character in IRI", pos_ - 1);
            }
            out += ch;
        }
        if (strict_) {
            if (!is_absolute_uri(out)) fail("relative IRI in N-Triples", start);
            return out;
        }
        return resolve_iri(base_, out);
    }

    std::string prefixed_name() {
        not_in_ntriples("prefixed name");
        const std::size_t start = pos_;
        while (!at_end() && peek() != ':' && is_name_char(static_cast<unsigned char>(peek()))) ++pos_;
        if (peek() != ':') fail("expected prefixed name", start);
        std::string prefix(src_.substr(start, pos_ - start));
        ++pos_;
        auto it = prefixes_.find(prefix);
        if (it == prefixes_.end()) fail("undeclared prefix '" + prefix + ":'", start);

        std::string local;
        for (;;) {
            const auto ch = static_cast<unsigned char>(peek());
            if (at_end()) break;
            if (is_name_char(ch) || ch == ':') {
                local += static_cast<char>(ch);
                ++pos_;
            } else if (ch == '%') {
                if (src_.size() - pos_ < 3) fail("truncated percent escape");
                local.append(src_.substr(pos_, 3));
                pos_ += 3;
            } else if (ch == '\\' && pos_ + 1 < src_.size()) {
                local += src_[pos_ + 1];
                pos_ += 2;
            } else {
                break;
            }
        }
        // A trailing '.' terminates the statement rather than the name.
        while (!local.empty() && local.back() == '.') {
            local.pop_back();
            --pos_;
        }
        return it->second + local;
    }

    Term rdf_literal() {
        std::string lexical = string_literal();
        if (peek() == '@') {
            ++pos_;
            const std::size_t start = pos_;
            while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-')) ++pos_;
            if (pos_ == start) fail("empty language tag");
            return Term::literal(std::move(lexical), {}, std::string(src_.substr(start, pos_ - start)));
        }
        if (peek() == '^' && peek(1) == '^') {
            pos_ += 2;
            std::string datatype = peek() == '<' ? iri_ref() : prefixed_name();
            return Term::literal(std::move(lexical), std::move(datatype));
        }
        return Term::literal(std::move(lexical));
    }

    std::string string_literal() {
        const std::size_t start = pos_;
        const char quote = src_[pos_];
        const bool is_long = peek(1) == quote && peek(2) == quote;
        if (is_long) not_in_ntriples("long string");
        if (quote == '\'') not_in_ntriples("single-quoted string");
        pos_ += is_long ? 3 : 1;
        std::string out;
        for (;;) {
            if (at_end()) fail("unterminated string", start);
            const char ch = src_[pos_];
            if (ch == quote) {
                if (!is_long) {
                    ++pos_;
                    return out;
                }
                if (peek(1) == quote && peek(2) == quote) {
                    // Up to two extra quotes may precede the closing triple.
                    while (peek(3) == quote) {
                        out += quote;
                        ++pos_;
                    }
                    pos_ += 3;
                    return out;
                }
                out += ch;
                ++pos_;
                continue;
            }
            if (!is_long && (ch == '\n' || ch == '\r')) fail("newline in short string", pos_);
            if (ch == '\\') {
                ++pos_;
                const char e = peek();
                ++pos_;
                switch (e) {
                    case 't': out += '\t'; break;
                    case 'b': out += '\b'; break;
                    case 'n': out += '\n'; break;
                    case 'r': out += '\r'; break;
                    case 'f': out += '\f'; break;
                    case '"': out += '"'; break;
                    case '\'': out += '\''; break;
                    case '\\': out += '\\'; break;
                    case 'u': append_utf8(out, hex_escape(4)); break;
                    case 'U': append_utf8(out, hex_escape(8)); break;
                    default: fail("invalid string escape", pos_ - 2);
                }
                continue;
            }
            out += ch;
            ++pos_;
        }
    }

    Term numeric_literal() {
        not_in_ntriples("numeric literal");
        const std::size_t start = pos_;
        if (peek() == '+' || peek() == '-') ++pos_;
        bool digits = false;
        while (is_digit(peek())) {
            ++pos_;
            digits = true;
        }
        bool decimal = false;
        if (peek() == '.' && is_digit(peek(1))) {
            decimal = true;
            ++pos_;
            while (is_digit(peek())) ++pos_;
            digits = true;
        }
        bool exponent = false;
        if (digits && (peek() == 'e' || peek() == 'E')) {
            exponent = true;
            ++pos_;
            if (peek() == '+' || peek() == '-') ++pos_;
            if (!is_digit(peek())) fail("malformed exponent");
            while (is_digit(peek())) ++pos_;
        }
        if (!digits) fail("malformed number", start);
        std::string lexical(src_.substr(start, pos_ - start));
        const char* type = exponent ? "double" : decimal ? "decimal" : "integer";
        return Term::literal(std::move(lexical), std::string(kXsd) + type);
    }

    std::string_view src_;
    const TripleSink& sink_;
    std::string base_;
    bool strict_;
    std::size_t pos_ = 0;
    std::uint64_t blank_counter_ = 0;
    std::unordered_map<std::string, std::string> prefixes_;
};

}  // namespace

void parse_turtle(std::string_view document, const TripleSink& sink, std::string_view base) {
    TurtleParser(document, sink, base, false).run();
}

void parse_ntriples(std::string_view document, const TripleSink& sink) {
    TurtleParser(document, sink, {}, true).run();
}

}  // namespace aligndash::rdf
