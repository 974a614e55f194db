#pragma once

// Thin event-driven wrapper around expat with namespace processing on and the
// input encoding pinned to UTF-8.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aligndash/errors.hpp"

namespace aligndash::xml {

inline constexpr std::string_view kXmlNamespace = "http://www.w3.org/XML/1998/namespace";

struct Name {
    std::string_view ns;
    std::string_view local;

    bool is(std::string_view n, std::string_view l) const { return ns == n && local == l; }
};

struct Attribute {
    Name name;
    std::string_view value;
};

class Handler {
  public:
    virtual ~Handler() = default;
    virtual void start_element(const Name& name, std::span<const Attribute> attrs) = 0;
    virtual void end_element(const Name& name) = 0;
    virtual void characters(std::string_view text) = 0;
};

/// Looks up an attribute by expanded name; returns nullptr when absent.
const Attribute* find_attribute(std::span<const Attribute> attrs, std::string_view ns, std::string_view local);

class Parser {
  public:
    explicit Parser(Handler& handler) : handler_(handler) {}

    /// Feeds the whole document. Syntax errors become ParseError(XmlSyntax);
    /// exceptions thrown by the handler propagate unchanged.
    void parse(std::string_view document);

    /// Position of the event currently being dispatched. Only meaningful
    /// while a handler callback runs.
    SourcePosition position() const;

  private:
    Handler& handler_;
    void* native_ = nullptr;
};

}  // namespace aligndash::xml
