#pragma once

namespace symbreak {

inline constexpr const char* kToolName = "symbreak";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace symbreak
