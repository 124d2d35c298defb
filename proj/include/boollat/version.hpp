#pragma once

namespace boollat {

inline constexpr const char* kToolName = "boollat";
inline constexpr const char* kToolVersion = "0.1.0";

} // namespace boollat
