#pragma once

namespace impred {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace impred
