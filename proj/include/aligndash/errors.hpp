#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aligndash {

/// 1-based line and column plus 0-based byte offset. A zero line means the
/// position is unknown.
struct SourcePosition {
    std::size_t line = 0;
    std::size_t column = 0;
    std::size_t byte = 0;
};

std::string to_string(const SourcePosition& pos);

enum class ParseErrorKind { XmlSyntax, MissingEntity, BadMeasure, RdfSyntax, UnsupportedSyntax };

std::string_view to_string(ParseErrorKind kind);

/// Any failure to turn input bytes into a model object.
class ParseError : public std::runtime_error {
  public:
    ParseError(ParseErrorKind kind, std::string detail, SourcePosition pos = {});

    ParseErrorKind kind() const { return kind_; }
    const SourcePosition& position() const { return pos_; }
    const std::string& detail() const { return detail_; }

  private:
    ParseErrorKind kind_;
    std::string detail_;
    SourcePosition pos_;
};

class IoError : public std::runtime_error {
  public:
    IoError(const std::filesystem::path& path, const std::string& what);
    const std::filesystem::path& path() const { return path_; }

  private:
    std::filesystem::path path_;
};

/// A non-fatal observation made while reading input.
struct Diagnostic {
    SourcePosition position;
    std::string message;
};

using Diagnostics = std::vector<Diagnostic>;

std::string read_file(const std::filesystem::path& path);

/// Writes `content` to `path`, creating parent directories as needed.
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace aligndash
