#pragma once

namespace bellpoly {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace bellpoly
