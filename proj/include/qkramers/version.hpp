#pragma once

namespace qkr {
inline constexpr const char* kVersion = "0.1.0";
}
