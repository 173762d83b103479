#pragma once

namespace watlas {

inline constexpr const char* kToolName = "winding-atlas";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace watlas
