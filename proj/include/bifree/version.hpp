#pragma once

namespace bifree {

inline constexpr const char* kToolName = "bifree";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace bifree
