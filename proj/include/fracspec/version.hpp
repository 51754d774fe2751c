#pragma once

namespace fracspec {

inline constexpr const char* version = "0.1.0";

}  // namespace fracspec
