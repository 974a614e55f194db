#pragma once

#include <string>
#include <string_view>

namespace aligndash {

/// Resolves `reference` against `base` following RFC 3986 section 5.2.
/// An absolute reference is returned with dot segments removed; an empty base
/// leaves relative references untouched.
std::string resolve_iri(std::string_view base, std::string_view reference);

/// Substring after the last '#', or after the last '/' when there is no '#'.
/// Falls back to the whole IRI when that substring would be empty.
std::string_view local_name(std::string_view iri);

}  // namespace aligndash
