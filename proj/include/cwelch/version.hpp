#pragma once

namespace cwelch {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cwelch
