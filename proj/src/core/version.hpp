#pragma once

namespace sqha {
inline constexpr const char* kVersion = "0.1.0";
}
