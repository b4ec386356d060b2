#pragma once

#include <string_view>

namespace ure {

inline constexpr std::string_view kToolName = "ure";
inline constexpr std::string_view kToolVersion = "0.1.0";

} // namespace ure
