#pragma once

#include <iosfwd>
#include <string_view>

namespace aligndash {

inline constexpr std::string_view kVersion = "1.0.0";

/// Exit codes of `aligndash`.
enum ExitCode : int {
    kExitOk = 0,
    kExitBadArguments = 1,
    kExitConfigError = 2,  // configuration, missing files, I/O
    kExitParseError = 3,   // malformed alignment or ontology file
};

/// Entry point of the command-line tool. Progress, warnings and errors go to
/// `err`; the summary table and help text go to `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace aligndash
