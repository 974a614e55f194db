#include "aligndash/errors.hpp"

#include <fstream>
#include <sstream>

namespace aligndash {

std::string to_string(const SourcePosition& pos) {
    if (pos.line == 0) return "unknown position";
    return "line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column) + " (byte " +
           std::to_string(pos.byte) + ")";
}

std::string_view to_string(ParseErrorKind kind) {
    switch (kind) {
        case ParseErrorKind::XmlSyntax: return "XmlSyntax";
        case ParseErrorKind::MissingEntity: return "MissingEntity";
        case ParseErrorKind::BadMeasure: return "BadMeasure";
        case ParseErrorKind::RdfSyntax: return "RdfSyntax";
        case ParseErrorKind::UnsupportedSyntax: return "UnsupportedSyntax";
    }
    return "ParseError";
}

namespace {

std::string format_parse_error(ParseErrorKind kind, const std::string& detail, const SourcePosition& pos) {
    std::string msg(to_string(kind));
    if (pos.line != 0) msg += " at " + to_string(pos);
    msg += ": " + detail;
    return msg;
}

}  // namespace

ParseError::ParseError(ParseErrorKind kind, std::string detail, SourcePosition pos)
    : std::runtime_error(format_parse_error(kind, detail, pos)), kind_(kind), detail_(std::move(detail)), pos_(pos) {}

IoError::IoError(const std::filesystem::path& path, const std::string& what)
    : std::runtime_error(path.string() + ": " + what), path_(path) {}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path, "cannot open for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError(path, "read failed");
    return std::move(buf).str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw IoError(path.parent_path(), "cannot create directory: " + ec.message());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path, "cannot open for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError(path, "write failed");
}

}  // namespace aligndash
