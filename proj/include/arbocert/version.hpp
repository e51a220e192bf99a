#pragma once

namespace arbo {

inline constexpr const char* kToolName = "arbocert";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace arbo
