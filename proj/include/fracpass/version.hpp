#pragma once

namespace fracpass {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fracpass
