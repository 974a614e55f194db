#include "xml_sax.hpp"

#include <expat.h>

#include <algorithm>
#include <exception>
#include <memory>

namespace aligndash::xml {

namespace {

constexpr char kSeparator = '\x1F';

Name split_name(const XML_Char* raw) {
    std::string_view full(raw);
    auto pos = full.find(kSeparator);
    if (pos == std::string_view::npos) return Name{{}, full};
    return Name{full.substr(0, pos), full.substr(pos + 1)};
}

struct Context {
    Handler* handler = nullptr;
    XML_Parser parser = nullptr;
    std::exception_ptr error;
    std::vector<Attribute> attrs;
};

// Handler exceptions must not unwind through expat's C frames.
template <typename Fn>
void guarded(Context* ctx, Fn&& fn) {
    if (ctx->error) return;
    try {
        fn();
    } catch (...) {
        ctx->error = std::current_exception();
        XML_StopParser(ctx->parser, XML_FALSE);
    }
}

void XMLCALL on_start(void* user, const XML_Char* name, const XML_Char** atts) {
    auto* ctx = static_cast<Context*>(user);
    guarded(ctx, [&] {
        ctx->attrs.clear();
        for (const XML_Char** a = atts; *a != nullptr; a += 2) {
            ctx->attrs.push_back(Attribute{split_name(a[0]), std::string_view(a[1])});
        }
        ctx->handler->start_element(split_name(name), ctx->attrs);
    });
}

void XMLCALL on_end(void* user, const XML_Char* name) {
    auto* ctx = static_cast<Context*>(user);
    guarded(ctx, [&] { ctx->handler->end_element(split_name(name)); });
}

void XMLCALL on_text(void* user, const XML_Char* s, int len) {
    auto* ctx = static_cast<Context*>(user);
    guarded(ctx, [&] { ctx->handler->characters(std::string_view(s, static_cast<std::size_t>(len))); });
}

SourcePosition current_position(XML_Parser p) {
    SourcePosition pos;
    pos.line = static_cast<std::size_t>(XML_GetCurrentLineNumber(p));
    pos.column = static_cast<std::size_t>(XML_GetCurrentColumnNumber(p)) + 1;
    const auto byte = XML_GetCurrentByteIndex(p);
    pos.byte = byte < 0 ? 0 : static_cast<std::size_t>(byte);
    return pos;
}

struct ParserDeleter {
    void operator()(XML_ParserStruct* p) const { XML_ParserFree(p); }
};

}  // namespace

const Attribute* find_attribute(std::span<const Attribute> attrs, std::string_view ns, std::string_view local) {
    auto it = std::find_if(attrs.begin(), attrs.end(), [&](const Attribute& a) { return a.name.is(ns, local); });
    return it == attrs.end() ? nullptr : &*it;
}

SourcePosition Parser::position() const {
    if (native_ == nullptr) return {};
    return current_position(static_cast<XML_Parser>(native_));
}

void Parser::parse(std::string_view document) {
    std::unique_ptr<XML_ParserStruct, ParserDeleter> parser(XML_ParserCreateNS("UTF-8", kSeparator));
    if (!parser) throw std::bad_alloc();

    Context ctx;
    ctx.handler = &handler_;
    ctx.parser = parser.get();
    XML_SetUserData(parser.get(), &ctx);
    XML_SetElementHandler(parser.get(), on_start, on_end);
    XML_SetCharacterDataHandler(parser.get(), on_text);
    native_ = parser.get();

    struct Reset {
        void*& slot;
        ~Reset() { slot = nullptr; }
    } reset{native_};

    // XML_Parse takes an int length.
    constexpr std::size_t kChunk = std::size_t{1} << 26;
    std::size_t offset = 0;
    do {
        const std::size_t n = std::min(kChunk, document.size() - offset);
        const bool last = offset + n == document.size();
        const auto status = XML_Parse(parser.get(), document.data() + offset, static_cast<int>(n), last ? 1 : 0);
        if (ctx.error) std::rethrow_exception(ctx.error);
        if (status != XML_STATUS_OK) {
            throw ParseError(ParseErrorKind::XmlSyntax, XML_ErrorString(XML_GetErrorCode(parser.get())),
                             current_position(parser.get()));
        }
        offset += n;
    } while (offset < document.size());
}

}  // namespace aligndash::xml
