#pragma once

namespace duality {

inline constexpr const char* tool_version = "0.1.0";

} // namespace duality
