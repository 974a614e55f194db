#pragma once

#include <string_view>

namespace aligndash::assets {

// Generated from assets/ at build time.
extern const std::string_view kDashboardScript;
extern const std::string_view kDashboardStyle;

}  // namespace aligndash::assets
