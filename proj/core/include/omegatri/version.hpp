#pragma once

#include <string_view>

namespace omegatri {

// Bumping this invalidates cached triangle files (meta.tool_version mismatch).
inline constexpr std::string_view kToolVersion = "0.1.0";

}  // namespace omegatri
