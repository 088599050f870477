#pragma once

namespace elex {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace elex
