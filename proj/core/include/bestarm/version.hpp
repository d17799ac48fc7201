#pragma once

namespace bestarm {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace bestarm
